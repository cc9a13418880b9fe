// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ALMEANS_MEAN2_HPP_
#define ALMEANS_MEAN2_HPP_

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "almeans/linalg.hpp"

namespace almeans {

enum class MeanKind {
  kArithmetic,
  kGeometric,
  kHarmonic,
  kLeftTrivial,
  kRightTrivial,
  kCustom,
};

const char* mean_kind_name(MeanKind kind);

// A two-variable operator mean, represented by its scalar function f on
// (0, inf) with f(1) = 1. Acting on definite matrices:
//
//   mean(A, B) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}
//
// The weight is f'(1); it is 0 or 1 exactly for the trivial means (which
// return one argument unchanged) and lies in (0,1) otherwise. Instances are
// immutable values and cheap to copy.
class TwoVarMean {
 public:
  MeanKind kind() const { return kind_; }
  double weight() const { return weight_; }
  bool is_trivial() const { return trivial_; }
  // f is affine on the sanity grid (within 1e-12, scaled); trivial means
  // count as arithmetic with weight 0 or 1.
  bool is_arithmetic() const { return arithmetic_; }
  // f agrees with its transpose t * f(1/t) on the grid.
  bool is_symmetric() const { return symmetric_; }
  const std::string& label() const { return label_; }

  double f(double t) const { return f_(t); }
  // Continuous extension at 0 (built-ins use closed forms; custom means
  // approximate it by f(1e-14)).
  double f_at_zero() const { return f_at_zero_; }

 private:
  // Construction goes through the factories below; MeanAccess is their
  // internal assembler.
  friend struct MeanAccess;
  TwoVarMean() = default;

  MeanKind kind_ = MeanKind::kCustom;
  double weight_ = 0.5;
  std::function<double(double)> f_;
  double f_at_zero_ = 0.0;
  bool trivial_ = false;
  bool arithmetic_ = false;
  bool symmetric_ = false;
  std::string label_;
};

// The shared 64-point log-spaced grid on [1e-4, 1e4] used for every
// pointwise statement about representing functions.
const std::vector<double>& mean_sanity_grid();

// Pointwise agreement of representing functions on the grid, within 1e-12
// scaled by 1 + |f| + |g|.
bool means_equal_on_grid(const TwoVarMean& a, const TwoVarMean& b);

// Built-in kinds. r must lie in [0,1]; r = 0 or 1 yields the matching
// trivial mean. kCustom is rejected here (use make_custom_mean).
TwoVarMean make_mean(MeanKind kind, double r);

// Wraps a user representing function. f is sanity-checked on the grid:
// f(1) = 1, nondecreasing, midpoint concave, and its finite-difference
// derivative at 1 must agree with `weight` within 1e-6. When `arithmetic`
// is set the grid must also confirm affinity.
TwoVarMean make_custom_mean(std::function<double(double)> f, double weight,
                            bool arithmetic = false,
                            std::string label = "custom");

// mean(A + eps I, B + eps I). Trivial means return the (shifted) argument;
// arithmetic means combine directly (valid on semidefinite input); other
// kinds require the first argument to be definite after the shift
// (SingularInput otherwise). eps < 0 is a ParameterError.
SpdMatrix evaluate(const TwoVarMean& mean, const SpdMatrix& a,
                   const SpdMatrix& b, double eps = 0.0);

// Transpose: swaps the arguments' roles, f~(t) = t f(1/t), weight 1 - r.
TwoVarMean transpose_mean(const TwoVarMean& mean);

// Adjoint: f*(t) = f(1/t)^{-1}, same weight. mean*(A,B) = mean(A^{-1},B^{-1})^{-1}
// on definite inputs. Trivial means have no adjoint (Unsupported).
TwoVarMean adjoint_mean(const TwoVarMean& mean);

// Declared weight, cross-checked against the central finite difference
// (f(1+h) - f(1-h)) / 2h with h = 1e-6; disagreement beyond 1e-6 raises
// InconsistentMean. Trivial means are Unsupported.
double weight_of(const TwoVarMean& mean);

// Scalar action: a f(b/a) for a > 0, extended by continuity at a = 0.
double scalar_mean(const TwoVarMean& mean, double a, double b);

// <mean(A,B)x, x> <= scalar_mean(<Ax,x>, <Bx,x>) + 1e-10. A must be
// definite; x nonzero.
bool scalar_mean_inequality_check(const TwoVarMean& mean, const SpdMatrix& a,
                                  const SpdMatrix& b, const Eigen::VectorXd& x);

}  // namespace almeans

#endif  // ALMEANS_MEAN2_HPP_
