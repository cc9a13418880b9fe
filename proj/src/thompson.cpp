// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include "almeans/thompson.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "almeans/mean2.hpp"

namespace almeans {
namespace {

// Extreme eigenvalues of A^{-1/2} B A^{-1/2}; both definite.
std::pair<double, double> similarity_extremes(const SpdMatrix& a, const SpdMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("metric: dims " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
  if (!a.definite() || !b.definite()) {
    throw DomainError("metric: both operands must be definite");
  }
  const Eigen::MatrixXd inv_root = inv_sqrt_of(a);
  Eigen::MatrixXd m = inv_root * b.entries() * inv_root;
  m = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("metric: similarity eigensolve failed");
  }
  const double lo = solver.eigenvalues()(0);
  const double hi = solver.eigenvalues()(m.rows() - 1);
  if (lo <= 0.0) {
    throw DomainError("metric: similarity has a nonpositive eigenvalue");
  }
  return {lo, hi};
}

}  // namespace

double thompson(const SpdMatrix& a, const SpdMatrix& b) {
  const auto [lo, hi] = similarity_extremes(a, b);
  return std::max(std::log(hi), -std::log(lo));
}

double spectral_radius(const Eigen::MatrixXd& x) {
  if (x.rows() == 0 || x.rows() != x.cols()) {
    throw DimensionMismatch("spectral_radius: expected a nonempty square matrix");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(x, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("spectral_radius: eigensolver did not converge");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double gauge_R(const SpdMatrix& x, const SpdMatrix& y) {
  const auto [lo, hi] = similarity_extremes(x, y);
  return std::max(hi, 1.0 / lo);
}

bool geodesic_gauge_bound_check(const SpdMatrix& x, const SpdMatrix& y,
                                double r, double s) {
  if (!(r >= 0.0 && r <= 1.0 && s >= 0.0 && s <= 1.0)) {
    throw ParameterError("geodesic_gauge_bound_check: r, s must lie in [0, 1]");
  }
  const SpdMatrix gr = evaluate(make_mean(MeanKind::kGeometric, r), x, y);
  const SpdMatrix gs = evaluate(make_mean(MeanKind::kGeometric, s), x, y);
  const double lhs = gauge_R(gr, gs);
  const double rhs = std::pow(gauge_R(x, y), std::abs(r - s));
  return lhs <= rhs * (1.0 + 1e-10);
}

}  // namespace almeans
