// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ALMEANS_STOCHASTIC_HPP_
#define ALMEANS_STOCHASTIC_HPP_

#include <Eigen/Dense>
#include <vector>

#include "almeans/errors.hpp"

namespace almeans {

// A row-stochastic matrix with zero diagonal, its stationary (left Perron)
// vector, and convergence metadata. Row sums are 1 within 1e-12 and
// p satisfies p^T Gamma = p^T within 1e-10 (checked on construction).
struct StochasticProfile {
  Eigen::MatrixXd gamma;
  Eigen::VectorXd p;      // entries sum to 1
  bool primitive = false;
  double spectral_gap = 0.0;  // 1 - |second largest eigenvalue modulus|
};

struct PrimitivityReport {
  bool primitive = false;
  double spectral_gap = 0.0;
  // Eigenvalues with modulus >= 1 - 1e-10; primitive means exactly one.
  int unit_modulus_count = 0;
};

// Stationary weights of the three-mean recursion in closed form:
//   p = ((1-r3) + r2 r3, (1-r1) + r3 r1, (1-r2) + r1 r2) / D
// with D the sum of the numerators. Each r must lie in (0, 1).
Eigen::Vector3d closed_form_p3(double r1, double r2, double r3);

// The 3x3 profile of a mean triple with weights (r1, r2, r3):
//   rows ((0, 1-r1, r1), (r2, 0, 1-r2), (1-r3, r3, 0)).
// Positive off-diagonal entries certify primitivity directly.
StochasticProfile gamma_from_weights_3(double r1, double r2, double r3);

// Profile of an (n+1)-family of n-variable means given their weight rows
// r^{(k)}: Gamma[k][(k+i) mod (n+1)] = r_i^{(k)}, zero diagonal. Every
// weight must be strictly positive (NotAffinelyDominated) with row sum 1,
// and the result must be primitive (NonPrimitive).
StochasticProfile gamma_from_multimeans(const std::vector<Eigen::VectorXd>& weight_rows);

// Same matrix layout without the positivity/primitivity gate; used for
// diagnostics on constructions outside the convergence hypotheses.
Eigen::MatrixXd gamma_matrix_from_rows(const std::vector<Eigen::VectorXd>& weight_rows);

// Left Perron vector of a row-stochastic matrix, normalized to sum 1.
// Solved via (Gamma^T - I) p = 0 with a normalization row swapped in; falls
// back to power iteration (tol 1e-14, at most 1e6 steps) if the solve is
// inconsistent. An eigenvalue-1 eigenspace of dimension > 1 raises
// DegeneratePerron.
Eigen::VectorXd perron_vector(const Eigen::MatrixXd& gamma);

// Counts eigenvalues with modulus >= 1 - 1e-10. A zero diagonal with all
// off-diagonal entries positive certifies primitivity without the count.
PrimitivityReport check_primitive(const Eigen::MatrixXd& gamma);

}  // namespace almeans

#endif  // ALMEANS_STOCHASTIC_HPP_
