// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include "almeans/mean2.hpp"

#include <cmath>
#include <utility>

namespace almeans {

// Sole holder of construction rights; keeps instances immutable once built.
struct MeanAccess {
  static TwoVarMean build(MeanKind kind, double weight, std::function<double(double)> f,
                          double f_at_zero, bool trivial, bool arithmetic,
                          std::string label) {
    TwoVarMean m;
    m.kind_ = kind;
    m.weight_ = weight;
    m.f_ = std::move(f);
    m.f_at_zero_ = f_at_zero;
    m.trivial_ = trivial;
    m.arithmetic_ = arithmetic;
    m.symmetric_ = false;
    m.label_ = std::move(label);
    return m;
  }
  static void set_symmetric(TwoVarMean& m, bool symmetric) { m.symmetric_ = symmetric; }
};

namespace {

constexpr double kGridAgreementTol = 1e-12;  // scaled by 1 + |f| + |g|
constexpr double kWeightDiffStep = 1e-6;
constexpr double kWeightDiffTol = 1e-6;
// Continuous extensions for custom means are sampled here.
constexpr double kNearZero = 1e-14;

std::vector<double> build_grid() {
  // 64 points, log-spaced over [1e-4, 1e4].
  std::vector<double> g(64);
  const double lo = std::log(1e-4);
  const double hi = std::log(1e4);
  for (int i = 0; i < 64; ++i) {
    g[i] = std::exp(lo + (hi - lo) * i / 63.0);
  }
  return g;
}

double central_difference_at_one(const TwoVarMean& mean) {
  return (mean.f(1.0 + kWeightDiffStep) - mean.f(1.0 - kWeightDiffStep)) /
         (2.0 * kWeightDiffStep);
}

bool grid_affine(const TwoVarMean& mean) {
  const double r = mean.weight();
  for (double t : mean_sanity_grid()) {
    const double affine = (1.0 - r) + r * t;
    if (std::abs(mean.f(t) - affine) >
        kGridAgreementTol * (1.0 + std::abs(affine) + std::abs(mean.f(t)))) {
      return false;
    }
  }
  return true;
}

bool grid_symmetric(const TwoVarMean& mean) {
  for (double t : mean_sanity_grid()) {
    const double lhs = mean.f(t);
    const double rhs = t * mean.f(1.0 / t);
    if (std::abs(lhs - rhs) >
        kGridAgreementTol * (1.0 + std::abs(lhs) + std::abs(rhs))) {
      return false;
    }
  }
  return true;
}

void check_custom_on_grid(const TwoVarMean& mean) {
  const std::vector<double>& grid = mean_sanity_grid();
  if (std::abs(mean.f(1.0) - 1.0) > kGridAgreementTol * 3.0) {
    throw ParameterError("custom mean rejected: f(1) = " + std::to_string(mean.f(1.0)) +
                         ", expected 1");
  }
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = mean.f(grid[i]);
    const double b = mean.f(grid[i + 1]);
    if (!(std::isfinite(a) && std::isfinite(b))) {
      throw ParameterError("custom mean rejected: non-finite value on the sanity grid");
    }
    if (b < a - 1e-10 * (1.0 + std::abs(a))) {
      throw ParameterError("custom mean rejected: not nondecreasing near t = " +
                           std::to_string(grid[i]));
    }
  }
  for (size_t i = 0; i < grid.size(); ++i) {
    for (size_t j = i + 1; j < grid.size(); ++j) {
      const double mid = 0.5 * (grid[i] + grid[j]);
      const double lhs = mean.f(mid);
      const double rhs = 0.5 * (mean.f(grid[i]) + mean.f(grid[j]));
      if (lhs < rhs - 1e-10 * (1.0 + std::abs(rhs))) {
        throw ParameterError("custom mean rejected: midpoint concavity fails between t = " +
                             std::to_string(grid[i]) + " and t = " + std::to_string(grid[j]));
      }
    }
  }
  const double d = central_difference_at_one(mean);
  if (std::abs(d - mean.weight()) > kWeightDiffTol) {
    throw InconsistentMean("custom mean rejected: derivative at 1 is " + std::to_string(d) +
                           " but declared weight is " + std::to_string(mean.weight()));
  }
  if (mean.is_arithmetic() && !grid_affine(mean)) {
    throw ParameterError("custom mean rejected: declared arithmetic but not affine on the grid");
  }
}

TwoVarMean make_trivial(bool left) {
  std::function<double(double)> f =
      left ? std::function<double(double)>([](double) { return 1.0; })
           : std::function<double(double)>([](double t) { return t; });
  // f is affine, so trivial means count as arithmetic; the triple validator
  // rejects them anyway.
  return MeanAccess::build(left ? MeanKind::kLeftTrivial : MeanKind::kRightTrivial,
                           left ? 0.0 : 1.0, std::move(f), left ? 1.0 : 0.0,
                           /*trivial=*/true, /*arithmetic=*/true,
                           left ? "left" : "right");
}

std::string builtin_label(MeanKind kind, double r) {
  return std::string(mean_kind_name(kind)) + "(" + std::to_string(r) + ")";
}

}  // namespace

const char* mean_kind_name(MeanKind kind) {
  switch (kind) {
    case MeanKind::kArithmetic: return "arithmetic";
    case MeanKind::kGeometric: return "geometric";
    case MeanKind::kHarmonic: return "harmonic";
    case MeanKind::kLeftTrivial: return "left";
    case MeanKind::kRightTrivial: return "right";
    case MeanKind::kCustom: return "custom";
  }
  return "?";
}

const std::vector<double>& mean_sanity_grid() {
  static const std::vector<double> grid = build_grid();
  return grid;
}

bool means_equal_on_grid(const TwoVarMean& a, const TwoVarMean& b) {
  for (double t : mean_sanity_grid()) {
    const double fa = a.f(t);
    const double fb = b.f(t);
    if (std::abs(fa - fb) > kGridAgreementTol * (1.0 + std::abs(fa) + std::abs(fb))) {
      return false;
    }
  }
  return true;
}

TwoVarMean make_mean(MeanKind kind, double r) {
  if (kind == MeanKind::kLeftTrivial) return make_trivial(true);
  if (kind == MeanKind::kRightTrivial) return make_trivial(false);
  if (kind == MeanKind::kCustom) {
    throw ParameterError("make_mean: custom means need make_custom_mean");
  }
  if (!(r >= 0.0 && r <= 1.0)) {
    throw ParameterError("make_mean: weight " + std::to_string(r) + " outside [0, 1]");
  }
  if (r == 0.0) return make_trivial(true);
  if (r == 1.0) return make_trivial(false);

  std::function<double(double)> f;
  double f_at_zero = 0.0;
  bool arithmetic = false;
  switch (kind) {
    case MeanKind::kArithmetic:
      f = [r](double t) { return (1.0 - r) + r * t; };
      f_at_zero = 1.0 - r;
      arithmetic = true;
      break;
    case MeanKind::kGeometric:
      f = [r](double t) { return std::pow(t, r); };
      break;
    case MeanKind::kHarmonic:
      f = [r](double t) { return t / (r + (1.0 - r) * t); };
      break;
    default:
      throw ParameterError("make_mean: unsupported kind");
  }
  TwoVarMean m = MeanAccess::build(kind, r, std::move(f), f_at_zero,
                                   /*trivial=*/false, arithmetic, builtin_label(kind, r));
  MeanAccess::set_symmetric(m, r == 0.5 && grid_symmetric(m));
  return m;
}

TwoVarMean make_custom_mean(std::function<double(double)> f, double weight,
                            bool arithmetic, std::string label) {
  if (!(weight > 0.0 && weight < 1.0)) {
    throw ParameterError("make_custom_mean: weight " + std::to_string(weight) +
                         " outside (0, 1)");
  }
  const double f_at_zero = f(kNearZero);
  TwoVarMean m = MeanAccess::build(MeanKind::kCustom, weight, std::move(f), f_at_zero,
                                   /*trivial=*/false, arithmetic, std::move(label));
  check_custom_on_grid(m);
  MeanAccess::set_symmetric(m, grid_symmetric(m));
  return m;
}

SpdMatrix evaluate(const TwoVarMean& mean, const SpdMatrix& a, const SpdMatrix& b,
                   double eps) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("evaluate: operand dims " + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()));
  }
  if (eps < 0.0) {
    throw ParameterError("evaluate: negative shift " + std::to_string(eps));
  }
  const SpdMatrix as = a.shifted(eps);
  const SpdMatrix bs = b.shifted(eps);

  switch (mean.kind()) {
    case MeanKind::kLeftTrivial:
      return as;
    case MeanKind::kRightTrivial:
      return bs;
    case MeanKind::kArithmetic: {
      const double r = mean.weight();
      return SpdMatrix((1.0 - r) * as.entries() + r * bs.entries());
    }
    default:
      break;
  }
  if (!as.definite()) {
    throw SingularInput("evaluate: first operand is singular and '" + mean.label() +
                        "' needs a positive argument; pass a shift");
  }
  const Eigen::MatrixXd root = sqrt_of(as);
  const Eigen::MatrixXd inv_root = inv_sqrt_of(as);
  const SpdMatrix inner(inv_root * bs.entries() * inv_root);
  SpectralFunction f;
  f.name = mean.label();
  f.fn = [&mean](double t) { return mean.f(t); };
  f.at_zero = mean.f_at_zero();
  const Eigen::MatrixXd mapped = apply_spectral_function(inner, f);
  return SpdMatrix(root * mapped * root);
}

TwoVarMean transpose_mean(const TwoVarMean& mean) {
  switch (mean.kind()) {
    case MeanKind::kLeftTrivial:
      return make_trivial(false);
    case MeanKind::kRightTrivial:
      return make_trivial(true);
    case MeanKind::kArithmetic:
    case MeanKind::kGeometric:
    case MeanKind::kHarmonic:
      // All three families are closed under transposition with weight 1 - r.
      return make_mean(mean.kind(), 1.0 - mean.weight());
    case MeanKind::kCustom:
      break;
  }
  TwoVarMean m = MeanAccess::build(
      MeanKind::kCustom, 1.0 - mean.weight(),
      [mean](double t) { return t * mean.f(1.0 / t); },
      kNearZero * mean.f(1.0 / kNearZero), /*trivial=*/false, mean.is_arithmetic(),
      "transpose(" + mean.label() + ")");
  MeanAccess::set_symmetric(m, mean.is_symmetric());
  return m;
}

TwoVarMean adjoint_mean(const TwoVarMean& mean) {
  switch (mean.kind()) {
    case MeanKind::kLeftTrivial:
    case MeanKind::kRightTrivial:
      throw Unsupported("adjoint of a trivial mean is not an operator mean");
    case MeanKind::kArithmetic:
      return make_mean(MeanKind::kHarmonic, mean.weight());
    case MeanKind::kHarmonic:
      return make_mean(MeanKind::kArithmetic, mean.weight());
    case MeanKind::kGeometric:
      return make_mean(MeanKind::kGeometric, mean.weight());
    case MeanKind::kCustom:
      break;
  }
  TwoVarMean m = MeanAccess::build(
      MeanKind::kCustom, mean.weight(),
      [mean](double t) { return 1.0 / mean.f(1.0 / t); },
      1.0 / mean.f(1.0 / kNearZero), /*trivial=*/false, /*arithmetic=*/false,
      "adjoint(" + mean.label() + ")");
  MeanAccess::set_symmetric(m, mean.is_symmetric());
  return m;
}

double weight_of(const TwoVarMean& mean) {
  if (mean.is_trivial()) {
    throw Unsupported("weight_of: trivial means have no weight in (0, 1)");
  }
  const double d = central_difference_at_one(mean);
  if (std::abs(d - mean.weight()) > kWeightDiffTol) {
    throw InconsistentMean("weight_of: derivative at 1 is " + std::to_string(d) +
                           " but declared weight is " + std::to_string(mean.weight()));
  }
  return mean.weight();
}

double scalar_mean(const TwoVarMean& mean, double a, double b) {
  if (a < 0.0 || b < 0.0) {
    throw DomainError("scalar_mean: arguments must be nonnegative");
  }
  if (a > 0.0) {
    if (b == 0.0) return a * mean.f_at_zero();
    return a * mean.f(b / a);
  }
  if (b == 0.0) return 0.0;
  // a = 0, b > 0: continuity gives b * lim_{t->0} t f(1/t).
  return b * transpose_mean(mean).f_at_zero();
}

bool scalar_mean_inequality_check(const TwoVarMean& mean, const SpdMatrix& a,
                                  const SpdMatrix& b, const Eigen::VectorXd& x) {
  if (x.size() != a.dim()) {
    throw DimensionMismatch("scalar_mean_inequality_check: probe has size " +
                            std::to_string(x.size()));
  }
  if (x.norm() == 0.0) {
    throw ParameterError("scalar_mean_inequality_check: probe vector is zero");
  }
  const SpdMatrix m = evaluate(mean, a, b, 0.0);
  const double lhs = x.dot(m.entries() * x);
  const double rhs = scalar_mean(mean, x.dot(a.entries() * x), x.dot(b.entries() * x));
  return lhs <= rhs + 1e-10;
}

}  // namespace almeans
