// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include "almeans/linalg.hpp"

#include <cmath>
#include <string>

namespace almeans {
namespace {

constexpr double kAsymmetryTol = 1e-8;   // relative, Frobenius
constexpr double kDefiniteTol = 1e-12;   // relative to lambda_max
constexpr double kSignTol = 1e-12;       // "first nonzero" eigenvector entry

void require_square(const Eigen::MatrixXd& m, const char* who) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(who) + ": expected a nonempty square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Flips eigenvector columns so the first component exceeding kSignTol in
// magnitude is positive. Unit columns always have such a component.
void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double v = vectors(i, j);
      if (std::abs(v) > kSignTol) {
        if (v < 0.0) vectors.col(j) = -vectors.col(j);
        break;
      }
    }
  }
}

SpectralDecomposition decompose_symmetric(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("symmetric eigensolver did not converge within its iteration cap (dim " +
                       std::to_string(sym.rows()) + ")");
  }
  SpectralDecomposition d;
  d.eigenvalues = solver.eigenvalues();
  d.eigenvectors = solver.eigenvectors();
  fix_signs(d.eigenvectors);
  return d;
}

}  // namespace

SpdMatrix::SpdMatrix(const Eigen::MatrixXd& raw) {
  require_square(raw, "SpdMatrix");
  const double scale = raw.norm();
  const double skew = (raw - raw.transpose()).norm();
  asymmetry_ = (scale > 0.0) ? skew / scale : skew;
  if (asymmetry_ > kAsymmetryTol) {
    throw NotSymmetric("matrix is not symmetric: relative asymmetry " +
                       std::to_string(asymmetry_) + " exceeds 1e-8");
  }
  entries_ = 0.5 * (raw + raw.transpose());
  spectral_ = decompose_symmetric(entries_);
  const double lmax = spectral_.eigenvalues(entries_.rows() - 1);
  const double lmin = spectral_.eigenvalues(0);
  zero_threshold_ = kDefiniteTol * std::max(lmax, 0.0);
  if (lmin < -zero_threshold_) {
    throw NotPositiveSemidefinite("matrix has eigenvalue " + std::to_string(lmin) +
                                  " below -1e-12 * lambda_max");
  }
  definite_ = lmin > zero_threshold_;
}

SpdMatrix SpdMatrix::identity(Eigen::Index dim) {
  return SpdMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

SpdMatrix SpdMatrix::diagonal(const Eigen::VectorXd& diag) {
  return SpdMatrix(Eigen::MatrixXd(diag.asDiagonal()));
}

SpdMatrix SpdMatrix::shifted(double eps) const {
  if (eps == 0.0) return *this;
  return SpdMatrix(entries_ + eps * Eigen::MatrixXd::Identity(dim(), dim()));
}

SpectralFunction spectral_sqrt() {
  return {"sqrt", [](double t) { return std::sqrt(t); }, 0.0};
}

SpectralFunction spectral_inv_sqrt() {
  return {"inv_sqrt", [](double t) { return 1.0 / std::sqrt(t); }, std::nullopt};
}

SpectralFunction spectral_log() {
  return {"log", [](double t) { return std::log(t); }, std::nullopt};
}

SpectralFunction spectral_inverse() {
  return {"inverse", [](double t) { return 1.0 / t; }, std::nullopt};
}

SpectralFunction spectral_power(double p) {
  SpectralFunction f;
  f.name = "power(" + std::to_string(p) + ")";
  f.fn = [p](double t) { return std::pow(t, p); };
  if (p > 0.0) f.at_zero = 0.0;
  return f;
}

const SpectralDecomposition& spectral_decompose(const SpdMatrix& a) {
  return a.spectral();
}

Eigen::MatrixXd apply_spectral_function(const SpdMatrix& a, const SpectralFunction& f) {
  const SpectralDecomposition& d = a.spectral();
  Eigen::VectorXd mapped(d.eigenvalues.size());
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
    const double lambda = d.eigenvalues(i);
    double value;
    if (lambda <= a.zero_threshold()) {
      if (!f.at_zero.has_value()) {
        throw DomainError("spectral function '" + f.name +
                          "' has no value at 0 but eigenvalue " + std::to_string(i) +
                          " is " + std::to_string(lambda));
      }
      value = *f.at_zero;
    } else {
      value = f.fn(lambda);
    }
    if (!std::isfinite(value)) {
      throw DomainError("spectral function '" + f.name + "' returned a non-finite value at " +
                        std::to_string(lambda));
    }
    mapped(i) = value;
  }
  Eigen::MatrixXd r =
      d.eigenvectors * mapped.asDiagonal() * d.eigenvectors.transpose();
  return 0.5 * (r + r.transpose());
}

SpdMatrix congruence(const Eigen::MatrixXd& s, const SpdMatrix& a) {
  require_square(s, "congruence");
  if (s.rows() != a.dim()) {
    throw DimensionMismatch("congruence: transform is " + std::to_string(s.rows()) +
                            "x" + std::to_string(s.cols()) + " but operand has dim " +
                            std::to_string(a.dim()));
  }
  const double scale = s.norm();
  const double skew = (s - s.transpose()).norm();
  if (skew > kAsymmetryTol * std::max(scale, 1e-300)) {
    throw NotSymmetric("congruence: transform is not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  return SpdMatrix(sym * a.entries() * sym);
}

SpdMatrix congruence(const SpdMatrix& s, const SpdMatrix& a) {
  return congruence(s.entries(), a);
}

double min_eigenvalue(const Eigen::MatrixXd& sym) {
  require_square(sym, "min_eigenvalue");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("symmetric eigensolver did not converge (values-only)");
  }
  return solver.eigenvalues()(0);
}

bool loewner_leq(const SpdMatrix& a, const SpdMatrix& b, double slack) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("loewner_leq: dims " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
  return min_eigenvalue(b.entries() - a.entries()) >= -slack;
}

Eigen::MatrixXd sqrt_of(const SpdMatrix& a) {
  return apply_spectral_function(a, spectral_sqrt());
}

Eigen::MatrixXd inv_sqrt_of(const SpdMatrix& a) {
  if (!a.definite()) {
    throw SingularInput("inverse square root requires a definite matrix");
  }
  return apply_spectral_function(a, spectral_inv_sqrt());
}

SpdMatrix inverse_of(const SpdMatrix& a) {
  if (!a.definite()) {
    throw SingularInput("inverse requires a definite matrix");
  }
  return SpdMatrix(apply_spectral_function(a, spectral_inverse()));
}

}  // namespace almeans
