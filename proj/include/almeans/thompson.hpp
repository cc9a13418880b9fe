// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ALMEANS_THOMPSON_HPP_
#define ALMEANS_THOMPSON_HPP_

#include <Eigen/Dense>

#include "almeans/linalg.hpp"

namespace almeans {

// Thompson part metric between definite matrices:
//   d(A, B) = max_i |log lambda_i(A^{-1/2} B A^{-1/2})|.
// Computed through the symmetric similarity so only symmetric eigensolves
// run. Semidefinite input raises DomainError (no automatic shift: distances
// to the boundary are genuinely infinite and regularization is the caller's
// call).
double thompson(const SpdMatrix& a, const SpdMatrix& b);

// Largest eigenvalue modulus of a general square matrix.
double spectral_radius(const Eigen::MatrixXd& x);

// max(rho(X^{-1} Y), rho(X Y^{-1})); equals exp(thompson(X, Y)).
double gauge_R(const SpdMatrix& x, const SpdMatrix& y);

// R(X #_r Y, X #_s Y) <= R(X, Y)^{|r - s|} with multiplicative slack 1e-10,
// where #_t is the weighted geometric mean. r, s in [0, 1].
bool geodesic_gauge_bound_check(const SpdMatrix& x, const SpdMatrix& y,
                                double r, double s);

}  // namespace almeans

#endif  // ALMEANS_THOMPSON_HPP_
