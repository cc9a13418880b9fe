// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ALMEANS_LINALG_HPP_
#define ALMEANS_LINALG_HPP_

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>

#include "almeans/errors.hpp"

namespace almeans {

// Eigendecomposition of a symmetric matrix. Eigenvalues are ascending;
// eigenvector columns match them and carry a deterministic sign: the first
// component with |v_i| > 1e-12 is positive. Given the same platform and
// input bytes the whole struct is byte-reproducible.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

// A positive semidefinite matrix with its certification baked in.
//
// Construction symmetrizes the input as (M + M^T)/2 and rejects it when the
// relative asymmetry ||M - M^T||_F / ||M||_F exceeds 1e-8. The spectrum is
// computed eagerly (the engine reuses it for square roots and metrics), and
// the matrix is classified definite when lambda_min > 1e-12 * lambda_max.
// Eigenvalues in [-tol, tol] with tol = 1e-12 * lambda_max count as zero;
// anything below -tol is rejected. Instances are immutable.
class SpdMatrix {
 public:
  explicit SpdMatrix(const Eigen::MatrixXd& raw);

  static SpdMatrix identity(Eigen::Index dim);
  static SpdMatrix diagonal(const Eigen::VectorXd& diag);

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  const SpectralDecomposition& spectral() const { return spectral_; }

  bool definite() const { return definite_; }
  // Eigenvalues at or below this count as zero for spectral functions.
  double zero_threshold() const { return zero_threshold_; }
  double lambda_min() const { return spectral_.eigenvalues(0); }
  double lambda_max() const { return spectral_.eigenvalues(dim() - 1); }
  double trace() const { return entries_.trace(); }
  // Relative asymmetry of the raw input, recorded before symmetrization.
  double asymmetry() const { return asymmetry_; }

  // entries() + eps * I as a certified matrix.
  SpdMatrix shifted(double eps) const;

 private:
  Eigen::MatrixXd entries_;
  SpectralDecomposition spectral_;
  double asymmetry_ = 0.0;
  double zero_threshold_ = 0.0;
  bool definite_ = false;
};

// Scalar function lifted to symmetric matrices through the spectrum.
// `fn` must be defined on (0, inf); `at_zero` is the continuous extension
// used for eigenvalues classified as zero, when one exists.
struct SpectralFunction {
  std::string name;
  std::function<double(double)> fn;
  std::optional<double> at_zero;
};

SpectralFunction spectral_sqrt();
SpectralFunction spectral_inv_sqrt();
SpectralFunction spectral_log();
SpectralFunction spectral_inverse();
// t^p with at_zero = 0 for p > 0 (no extension otherwise).
SpectralFunction spectral_power(double p);

// Decomposes through the cached spectrum. The reconstruction error satisfies
// ||Q L Q^T - A||_F <= dim * eps_mach * ||A||_F * c with c = 100 (tested).
// The eigensolver's iteration cap (30 sweeps per off-diagonal entry) failing
// raises EigenFailure.
const SpectralDecomposition& spectral_decompose(const SpdMatrix& a);

// Q f(L) Q^T, symmetrized. Eigenvalues at or below the matrix's zero
// threshold use f.at_zero; a missing extension or a non-finite value raises
// DomainError. The result is a plain symmetric matrix (f may be negative).
Eigen::MatrixXd apply_spectral_function(const SpdMatrix& a,
                                        const SpectralFunction& f);

// S * A * S for symmetric S (checked against the same 1e-8 asymmetry bound).
// S may be indefinite; the result is certified on construction.
SpdMatrix congruence(const Eigen::MatrixXd& s, const SpdMatrix& a);
SpdMatrix congruence(const SpdMatrix& s, const SpdMatrix& a);

// A <= B in the Loewner order up to slack: lambda_min(B - A) >= -slack.
bool loewner_leq(const SpdMatrix& a, const SpdMatrix& b, double slack = 0.0);

// Smallest eigenvalue of a symmetric matrix (values-only solve).
double min_eigenvalue(const Eigen::MatrixXd& sym);

// Convenience maps reused across the library (all via the cached spectrum).
Eigen::MatrixXd sqrt_of(const SpdMatrix& a);
Eigen::MatrixXd inv_sqrt_of(const SpdMatrix& a);  // requires definite
SpdMatrix inverse_of(const SpdMatrix& a);         // requires definite

}  // namespace almeans

#endif  // ALMEANS_LINALG_HPP_
