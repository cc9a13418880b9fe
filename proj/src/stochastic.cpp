// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include "almeans/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "almeans/log.hpp"

namespace almeans {
namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kStationaryResidualTol = 1e-10;
constexpr double kUnitModulusTol = 1e-10;
constexpr double kDegenerateTol = 1e-8;

void require_row_stochastic(const Eigen::MatrixXd& gamma, const char* who) {
  if (gamma.rows() < 2 || gamma.rows() != gamma.cols()) {
    throw DimensionMismatch(std::string(who) + ": expected a square matrix of dim >= 2");
  }
  for (Eigen::Index i = 0; i < gamma.rows(); ++i) {
    if (gamma.row(i).minCoeff() < -1e-12) {
      throw ParameterError(std::string(who) + ": negative entry in row " + std::to_string(i));
    }
    if (std::abs(gamma.row(i).sum() - 1.0) > kRowSumTol) {
      throw ParameterError(std::string(who) + ": row " + std::to_string(i) +
                           " sums to " + std::to_string(gamma.row(i).sum()) + ", expected 1");
    }
  }
}

Eigen::VectorXcd complex_spectrum(const Eigen::MatrixXd& gamma) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(gamma, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("general eigensolver did not converge on a stochastic matrix");
  }
  return solver.eigenvalues();
}

// Residual of the stationarity equation, infinity norm.
double stationary_residual(const Eigen::MatrixXd& gamma, const Eigen::VectorXd& p) {
  return (gamma.transpose() * p - p).lpNorm<Eigen::Infinity>();
}

std::optional<Eigen::VectorXd> solve_stationary(const Eigen::MatrixXd& gamma) {
  const Eigen::Index n = gamma.rows();
  Eigen::MatrixXd k = gamma.transpose() - Eigen::MatrixXd::Identity(n, n);
  k.row(0).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(0) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(k);
  if (!lu.isInvertible()) return std::nullopt;
  Eigen::VectorXd p = lu.solve(rhs);
  if (!p.allFinite()) return std::nullopt;
  return p;
}

std::optional<Eigen::VectorXd> power_iteration(const Eigen::MatrixXd& gamma) {
  const Eigen::Index n = gamma.rows();
  Eigen::VectorXd p = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd gt = gamma.transpose();
  for (long step = 0; step < 1000000; ++step) {
    Eigen::VectorXd next = gt * p;
    next /= next.lpNorm<1>();
    if ((next - p).lpNorm<1>() <= 1e-14) return next;
    p = next;
  }
  return std::nullopt;
}

}  // namespace

Eigen::Vector3d closed_form_p3(double r1, double r2, double r3) {
  for (double r : {r1, r2, r3}) {
    if (!(r > 0.0 && r < 1.0)) {
      throw ParameterError("closed_form_p3: weight " + std::to_string(r) +
                           " outside (0, 1)");
    }
  }
  const double n1 = (1.0 - r3) + r2 * r3;
  const double n2 = (1.0 - r1) + r3 * r1;
  const double n3 = (1.0 - r2) + r1 * r2;
  const double d = n1 + n2 + n3;
  return Eigen::Vector3d(n1 / d, n2 / d, n3 / d);
}

StochasticProfile gamma_from_weights_3(double r1, double r2, double r3) {
  for (double r : {r1, r2, r3}) {
    if (!(r > 0.0 && r < 1.0)) {
      throw ParameterError("gamma_from_weights_3: weight " + std::to_string(r) +
                           " outside (0, 1)");
    }
  }
  StochasticProfile profile;
  profile.gamma.setZero(3, 3);
  profile.gamma << 0.0, 1.0 - r1, r1,
                   r2, 0.0, 1.0 - r2,
                   1.0 - r3, r3, 0.0;
  profile.p = perron_vector(profile.gamma);
  const PrimitivityReport report = check_primitive(profile.gamma);
  profile.primitive = report.primitive;
  profile.spectral_gap = report.spectral_gap;
  return profile;
}

Eigen::MatrixXd gamma_matrix_from_rows(const std::vector<Eigen::VectorXd>& weight_rows) {
  const Eigen::Index count = static_cast<Eigen::Index>(weight_rows.size());
  if (count < 3) {
    throw DimensionMismatch("gamma_matrix_from_rows: need at least 3 weight rows");
  }
  const Eigen::Index arity = count - 1;
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(count, count);
  for (Eigen::Index k = 0; k < count; ++k) {
    const Eigen::VectorXd& row = weight_rows[static_cast<size_t>(k)];
    if (row.size() != arity) {
      throw DimensionMismatch("gamma_matrix_from_rows: row " + std::to_string(k) +
                              " has " + std::to_string(row.size()) + " weights, expected " +
                              std::to_string(arity));
    }
    if (std::abs(row.sum() - 1.0) > kRowSumTol) {
      throw ParameterError("gamma_matrix_from_rows: row " + std::to_string(k) +
                           " weights sum to " + std::to_string(row.sum()) + ", expected 1");
    }
    for (Eigen::Index i = 1; i <= arity; ++i) {
      gamma(k, (k + i) % count) = row(i - 1);
    }
  }
  return gamma;
}

StochasticProfile gamma_from_multimeans(const std::vector<Eigen::VectorXd>& weight_rows) {
  for (size_t k = 0; k < weight_rows.size(); ++k) {
    if (weight_rows[k].size() > 0 && weight_rows[k].minCoeff() <= 0.0) {
      throw NotAffinelyDominated("mean " + std::to_string(k) +
                                 " has a nonpositive weight; the dominating affine "
                                 "combination must have strictly positive coefficients");
    }
  }
  StochasticProfile profile;
  profile.gamma = gamma_matrix_from_rows(weight_rows);
  const PrimitivityReport report = check_primitive(profile.gamma);
  if (!report.primitive) {
    throw NonPrimitive("profile matrix is not primitive: " +
                       std::to_string(report.unit_modulus_count) +
                       " eigenvalues on the unit circle");
  }
  profile.primitive = true;
  profile.spectral_gap = report.spectral_gap;
  profile.p = perron_vector(profile.gamma);
  return profile;
}

Eigen::VectorXd perron_vector(const Eigen::MatrixXd& gamma) {
  require_row_stochastic(gamma, "perron_vector");
  const Eigen::VectorXcd spectrum = complex_spectrum(gamma);
  int near_one = 0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    if (std::abs(spectrum(i) - std::complex<double>(1.0, 0.0)) <= kDegenerateTol) ++near_one;
  }
  if (near_one > 1) {
    throw DegeneratePerron("perron_vector: eigenvalue 1 has multiplicity " +
                           std::to_string(near_one));
  }

  std::optional<Eigen::VectorXd> p = solve_stationary(gamma);
  if (p.has_value() && stationary_residual(gamma, *p) > kStationaryResidualTol) {
    p.reset();
  }
  if (!p.has_value()) {
    log_warn("perron_vector: direct solve inconsistent, falling back to power iteration");
    p = power_iteration(gamma);
  }
  if (!p.has_value()) {
    throw DegeneratePerron("perron_vector: no stationary vector found");
  }
  Eigen::VectorXd result = *p;
  if (result.minCoeff() < -1e-12) {
    throw DegeneratePerron("perron_vector: stationary vector has a negative entry");
  }
  result = result.cwiseMax(0.0);
  result /= result.sum();
  if (stationary_residual(gamma, result) > kStationaryResidualTol) {
    throw DegeneratePerron("perron_vector: stationary residual exceeds 1e-10");
  }
  return result;
}

PrimitivityReport check_primitive(const Eigen::MatrixXd& gamma) {
  require_row_stochastic(gamma, "check_primitive");
  const Eigen::VectorXcd spectrum = complex_spectrum(gamma);
  std::vector<double> moduli(static_cast<size_t>(spectrum.size()));
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    moduli[static_cast<size_t>(i)] = std::abs(spectrum(i));
  }
  std::sort(moduli.begin(), moduli.end(), std::greater<double>());

  PrimitivityReport report;
  report.unit_modulus_count =
      static_cast<int>(std::count_if(moduli.begin(), moduli.end(),
                                     [](double m) { return m >= 1.0 - kUnitModulusTol; }));
  report.spectral_gap = std::clamp(1.0 - moduli[1], 0.0, 1.0);

  bool positive_off_diagonal = true;
  for (Eigen::Index i = 0; i < gamma.rows() && positive_off_diagonal; ++i) {
    if (gamma(i, i) != 0.0) positive_off_diagonal = false;
    for (Eigen::Index j = 0; j < gamma.cols(); ++j) {
      if (i != j && gamma(i, j) <= 0.0) {
        positive_off_diagonal = false;
        break;
      }
    }
  }
  // The structural certificate needs the square to be entrywise positive
  // (true for zero-diagonal positive matrices of size >= 3, but not for the
  // 2x2 swap, whose square is the identity).
  const bool square_positive =
      positive_off_diagonal && ((gamma * gamma).array() > 0.0).all();
  report.primitive = square_positive || report.unit_modulus_count == 1;
  return report;
}

}  // namespace almeans
