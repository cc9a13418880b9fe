// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ALMEANS_RNG_HPP_
#define ALMEANS_RNG_HPP_

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>

#include "almeans/linalg.hpp"

namespace almeans {

// 64-bit FNV-1a; combined with a global seed to give every named check its
// own stream, so checks stay deterministic when run in any order or subset.
std::uint64_t fnv1a(std::string_view text);

// Seeded generator for test fixtures. All draws go through the member
// engine, so a Sampler with a fixed seed replays the same sequence on one
// platform regardless of what other samplers do.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed);

  double uniform(double lo, double hi);
  // log-spaced in [lo, hi]; lo > 0 required.
  double log_uniform(double lo, double hi);
  double gaussian();
  // Inclusive bounds.
  int uniform_int(int lo, int hi);

  Eigen::VectorXd gaussian_vector(Eigen::Index dim);
  Eigen::VectorXd unit_vector(Eigen::Index dim);
  Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

  // Haar-like orthogonal matrix: QR of a Gaussian draw with the R diagonal
  // forced positive, so the factor is unique and reproducible.
  Eigen::MatrixXd orthogonal(Eigen::Index dim);

  // Q diag(lambda) Q^T with eigenvalues log-uniform in [lambda_lo,
  // lambda_hi]. The default range pins the condition number at 1e4.
  SpdMatrix spd(Eigen::Index dim, double lambda_lo = 1e-2, double lambda_hi = 1e2);

  // Semidefinite with the given rank: the remaining eigenvalues are exactly
  // zero before rotation.
  SpdMatrix psd_singular(Eigen::Index dim, Eigen::Index rank,
                         double lambda_lo = 1e-1, double lambda_hi = 1e1);

  // (A, B) with A <= B constructively: B = A + G G^T (no rejection).
  std::pair<SpdMatrix, SpdMatrix> loewner_pair(Eigen::Index dim,
                                               double bump_scale = 0.5);

  // Three matrices sharing one eigenbasis (hence commuting).
  std::array<SpdMatrix, 3> commuting_triple(Eigen::Index dim,
                                            double lambda_lo = 1e-1,
                                            double lambda_hi = 1e1);

  // Symmetric with every |eigenvalue| >= 0.5: valid congruence transform,
  // possibly indefinite.
  Eigen::MatrixXd symmetric_invertible(Eigen::Index dim);

 private:
  std::mt19937_64 engine_;
};

}  // namespace almeans

#endif  // ALMEANS_RNG_HPP_
