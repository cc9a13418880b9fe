// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include "almeans/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "almeans/log.hpp"
#include "almeans/thompson.hpp"

namespace almeans {
namespace {

constexpr double kDefaultShiftScale = 1e-10;  // times the mean input trace
constexpr double kStationaryAgreementTol = 1e-12;

std::string index_list(const std::vector<int>& idx) {
  std::ostringstream out;
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i > 0) out << ",";
    out << idx[i];
  }
  return out.str();
}

void require_same_dims(const std::vector<SpdMatrix>& ops, const char* who) {
  for (size_t i = 1; i < ops.size(); ++i) {
    if (ops[i].dim() != ops[0].dim()) {
      throw DimensionMismatch(std::string(who) + ": operand " + std::to_string(i) +
                              " has dim " + std::to_string(ops[i].dim()) +
                              ", expected " + std::to_string(ops[0].dim()));
    }
  }
}

Eigen::MatrixXd aggregate_matrix(const std::vector<SpdMatrix>& ops,
                                 const Eigen::VectorXd& p) {
  Eigen::MatrixXd acc = p(0) * ops[0].entries();
  for (size_t i = 1; i < ops.size(); ++i) {
    acc += p(static_cast<Eigen::Index>(i)) * ops[i].entries();
  }
  return acc;
}

bool all_entries_equal(const std::vector<SpdMatrix>& ops) {
  for (size_t i = 1; i < ops.size(); ++i) {
    if (ops[i].entries() != ops[0].entries()) return false;
  }
  return true;
}

double max_pairwise_thompson(const std::vector<SpdMatrix>& ops) {
  double worst = 0.0;
  for (size_t i = 0; i < ops.size(); ++i) {
    for (size_t j = i + 1; j < ops.size(); ++j) {
      worst = std::max(worst, thompson(ops[i], ops[j]));
    }
  }
  return worst;
}

AlmOutcome closed_form_outcome(SpdMatrix limit, const Eigen::VectorXd& p,
                               double gap, bool primitive) {
  AlmOutcome out{.limit = std::move(limit),
                 .p = p,
                 .iterations = 0,
                 .stop_reason = StopReason::kClosedForm,
                 .final_max_thompson = 0.0,
                 .s_monotone_violation = 0.0,
                 .spectral_gap = gap,
                 .primitive = primitive,
                 .trace = {},
                 .ladder = {}};
  return out;
}

using StepObserver = std::function<void(long, const std::vector<SpdMatrix>&)>;

// The shared recursion loop. Inputs must be definite (callers shift
// semidefinite operators first). Returns kConverged or kMaxIter; the
// NonConverged policy is applied upstream.
AlmOutcome core_loop(const std::vector<MultiMean>& means, std::vector<SpdMatrix> ops,
                     const Eigen::VectorXd& p, const AlmConfig& cfg,
                     const StepObserver* observer = nullptr) {
  const size_t count = ops.size();
  const Eigen::Index dim = ops[0].dim();
  const Eigen::VectorXd probe =
      Eigen::VectorXd::Ones(dim) / std::sqrt(static_cast<double>(dim));
  const long stride = std::max<long>(cfg.trace_every, 1);

  AlmOutcome out;
  out.p = p;
  Eigen::MatrixXd s_prev = aggregate_matrix(ops, p);
  out.trace.push_back({0, max_pairwise_thompson(ops), 0.0, 0.0,
                       probe.dot(s_prev * probe)});
  if (observer != nullptr) (*observer)(0, ops);

  double worst_drop = std::numeric_limits<double>::infinity();
  std::vector<SpdMatrix> next;
  std::vector<SpdMatrix> args;
  next.reserve(count);
  args.reserve(count - 1);

  for (long m = 1; m <= cfg.max_iter; ++m) {
    next.clear();
    for (size_t k = 0; k < count; ++k) {
      args.clear();
      for (size_t i = 1; i < count; ++i) {
        args.push_back(ops[(k + i) % count]);
      }
      next.push_back(means[k].evaluator(std::span<const SpdMatrix>(args), cfg));
    }
    ops.swap(next);
    if (observer != nullptr) (*observer)(m, ops);

    const Eigen::MatrixXd s = aggregate_matrix(ops, p);
    const Eigen::MatrixXd drop = s_prev - s;
    const double drop_min = min_eigenvalue(drop);
    const double drop_fro = drop.norm();
    worst_drop = std::min(worst_drop, drop_min);

    const double distance = max_pairwise_thompson(ops);
    const bool converged = distance <= cfg.tol;
    const bool last = converged || m == cfg.max_iter;
    if (m % stride == 0 || last) {
      out.trace.push_back({m, distance, drop_fro, drop_min, probe.dot(s * probe)});
    }
    if (m % 512 == 0) {
      log_debug("iteration " + std::to_string(m) + ": max distance " +
                std::to_string(distance));
    }
    if (last) {
      out.limit = SpdMatrix(s);
      out.iterations = m;
      out.final_max_thompson = distance;
      out.stop_reason = converged ? StopReason::kConverged : StopReason::kMaxIter;
      out.s_monotone_violation = worst_drop;
      return out;
    }
    s_prev = s;
  }
  // max_iter = 0: nothing ran; report the inputs' aggregate.
  out.limit = SpdMatrix(s_prev);
  out.iterations = 0;
  out.final_max_thompson = out.trace.front().max_thompson;
  out.stop_reason = out.final_max_thompson <= cfg.tol ? StopReason::kConverged
                                                      : StopReason::kMaxIter;
  out.s_monotone_violation = 0.0;
  return out;
}

// Shift-ladder driver; applies the NonConverged policy.
AlmOutcome iterate_family(const std::vector<MultiMean>& means,
                          const std::vector<SpdMatrix>& ops, const Eigen::VectorXd& p,
                          const AlmConfig& cfg, double spectral_gap, bool primitive,
                          const StepObserver* observer = nullptr) {
  const bool any_semidefinite =
      std::any_of(ops.begin(), ops.end(), [](const SpdMatrix& x) { return !x.definite(); });

  AlmOutcome out;
  if (!any_semidefinite) {
    out = core_loop(means, ops, p, cfg, observer);
  } else {
    double trace_sum = 0.0;
    for (const SpdMatrix& x : ops) trace_sum += x.trace();
    const double base =
        cfg.eps_shift.value_or(kDefaultShiftScale * trace_sum / static_cast<double>(ops.size()));
    if (base < 0.0) {
      throw ParameterError("alm: negative shift " + std::to_string(base));
    }
    if (base == 0.0) {
      // Explicit opt-out of regularization; evaluate() raises SingularInput
      // if a mean actually needs positivity.
      out = core_loop(means, ops, p, cfg, observer);
    } else {
      std::vector<LadderRung> rungs;
      std::optional<AlmOutcome> prev;
      double eps = base;
      for (int j = 0; j < std::max(cfg.eps_ladder_length, 1); ++j) {
        std::vector<SpdMatrix> shifted;
        shifted.reserve(ops.size());
        for (const SpdMatrix& x : ops) shifted.push_back(x.shifted(eps));
        log_info("shift ladder rung " + std::to_string(j) + ": eps = " + std::to_string(eps));
        AlmOutcome rung = core_loop(means, shifted, p, cfg, observer);
        const double drop =
            prev.has_value() ? min_eigenvalue(prev->limit.entries() - rung.limit.entries())
                             : 0.0;
        rungs.push_back({eps, rung.iterations, drop});
        const double carried =
            prev.has_value() ? prev->s_monotone_violation : rung.s_monotone_violation;
        rung.s_monotone_violation = std::min(rung.s_monotone_violation, carried);
        prev = std::move(rung);
        if (prev->stop_reason == StopReason::kMaxIter) break;
        eps *= cfg.eps_ladder_factor;
      }
      out = std::move(*prev);
      out.ladder = std::move(rungs);
    }
  }
  out.p = p;
  out.spectral_gap = spectral_gap;
  out.primitive = primitive;
  if (out.stop_reason == StopReason::kMaxIter && !cfg.unsafe_allow) {
    std::ostringstream msg;
    msg << "did not converge within " << out.iterations
        << " iterations: max pairwise Thompson distance " << out.final_max_thompson
        << " above tol " << cfg.tol;
    throw NonConverged(msg.str(), out);
  }
  return out;
}

// Shared hypothesis gate for n-variable families. Returns the index lists a
// caller needs for error messages.
struct FamilyDiagnosis {
  std::vector<int> trivial;
  std::vector<int> not_dominated;
  std::vector<int> not_strictly_concave;
  bool all_arithmetic = true;
  bool valid() const {
    return trivial.empty() && not_dominated.empty() &&
           (all_arithmetic || not_strictly_concave.size() <= 1);
  }
};

FamilyDiagnosis diagnose_family(const std::vector<MultiMean>& means) {
  FamilyDiagnosis d;
  for (size_t k = 0; k < means.size(); ++k) {
    const MultiMean& m = means[k];
    if (m.is_trivial) d.trivial.push_back(static_cast<int>(k));
    if (!m.affinely_dominated) d.not_dominated.push_back(static_cast<int>(k));
    if (!m.is_arithmetic) d.all_arithmetic = false;
    if (!m.strictly_concave) d.not_strictly_concave.push_back(static_cast<int>(k));
  }
  return d;
}

void throw_family_error(const FamilyDiagnosis& d) {
  if (!d.trivial.empty()) {
    throw InvalidTriple("trivial mean at index " + index_list(d.trivial) +
                        "; the recursion needs non-trivial means");
  }
  if (!d.not_dominated.empty()) {
    throw NotAffinelyDominated("mean at index " + index_list(d.not_dominated) +
                               " is not affinely dominated (a weight is nonpositive)");
  }
  throw HypothesisViolation(
      "means at indices " + index_list(d.not_strictly_concave) +
      " are not strictly concave; the recursion requires all means arithmetic "
      "or at most one not strictly concave");
}

void check_means_shape(const std::vector<MultiMean>& means,
                       const std::vector<SpdMatrix>& ops) {
  if (means.size() < 3) {
    throw DimensionMismatch("alm_compute_n: need at least 3 means");
  }
  if (ops.size() != means.size()) {
    throw DimensionMismatch("alm_compute_n: " + std::to_string(means.size()) +
                            " means require " + std::to_string(means.size()) +
                            " operators, got " + std::to_string(ops.size()));
  }
  const int arity = static_cast<int>(means.size()) - 1;
  for (size_t k = 0; k < means.size(); ++k) {
    if (means[k].arity != arity) {
      throw DimensionMismatch("alm_compute_n: mean " + std::to_string(k) + " has arity " +
                              std::to_string(means[k].arity) + ", expected " +
                              std::to_string(arity));
    }
    if (!means[k].evaluator) {
      throw ParameterError("alm_compute_n: mean " + std::to_string(k) + " has no evaluator");
    }
  }
  require_same_dims(ops, "alm_compute_n");
}

std::vector<Eigen::VectorXd> weight_rows(const std::vector<MultiMean>& means) {
  std::vector<Eigen::VectorXd> rows;
  rows.reserve(means.size());
  for (const MultiMean& m : means) rows.push_back(m.weights);
  return rows;
}

AlmConfig nested_config(const AlmConfig& outer) {
  AlmConfig inner = outer;
  inner.tol = std::max(outer.tol * 1e-2, 1e-14);
  inner.force_iterate = false;
  inner.unsafe_allow = false;
  inner.trace_every = std::max<long>(outer.max_iter, 1);
  return inner;
}

}  // namespace

const char* stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::kConverged: return "Converged";
    case StopReason::kMaxIter: return "MaxIter";
    case StopReason::kClosedForm: return "ClosedForm";
  }
  return "?";
}

NonConverged::NonConverged(const std::string& message, AlmOutcome outcome)
    : Error(message), outcome_(std::move(outcome)) {}

MeanTriple validate_triple(const TwoVarMean& s1, const TwoVarMean& s2,
                           const TwoVarMean& s3) {
  const std::array<TwoVarMean, 3> sigma{s1, s2, s3};
  std::vector<int> trivial;
  std::vector<int> arithmetic;
  for (int i = 0; i < 3; ++i) {
    if (sigma[static_cast<size_t>(i)].is_trivial()) trivial.push_back(i);
    if (sigma[static_cast<size_t>(i)].is_arithmetic()) arithmetic.push_back(i);
  }
  if (!trivial.empty()) {
    throw InvalidTriple("trivial mean at index " + index_list(trivial) +
                        "; the recursion needs non-trivial means");
  }
  TripleClass classification = TripleClass::kAtMostOneArithmetic;
  if (arithmetic.size() == 3) {
    classification = TripleClass::kAllArithmetic;
  } else if (arithmetic.size() == 2) {
    // Two-variable means are strictly concave exactly when non-arithmetic,
    // so two arithmetic members plus a non-arithmetic one break the
    // convergence hypotheses.
    throw HypothesisViolation("means at indices " + index_list(arithmetic) +
                              " are arithmetic (not strictly concave) while the "
                              "remaining mean is not; require all arithmetic or at "
                              "most one non-strictly-concave mean");
  }
  return MeanTriple{sigma, closed_form_p3(s1.weight(), s2.weight(), s3.weight()),
                    classification};
}

std::array<SpdMatrix, 3> alm_step(const MeanTriple& triple, const SpdMatrix& a,
                                  const SpdMatrix& b, const SpdMatrix& c, double eps) {
  return {evaluate(triple.sigma[0], b, c, eps), evaluate(triple.sigma[1], c, a, eps),
          evaluate(triple.sigma[2], a, b, eps)};
}

AlmOutcome alm_compute(const MeanTriple& triple, const SpdMatrix& a, const SpdMatrix& b,
                       const SpdMatrix& c, const AlmConfig& config) {
  std::vector<SpdMatrix> ops{a, b, c};
  require_same_dims(ops, "alm_compute");

  const StochasticProfile profile = gamma_from_weights_3(
      triple.sigma[0].weight(), triple.sigma[1].weight(), triple.sigma[2].weight());
  if ((profile.p - triple.p).lpNorm<Eigen::Infinity>() > kStationaryAgreementTol) {
    throw Error("alm_compute: closed-form stationary weights disagree with the "
                "profile solve beyond 1e-12");
  }

  if (!config.force_iterate) {
    if (all_entries_equal(ops)) {
      return closed_form_outcome(a, profile.p, profile.spectral_gap, true);
    }
    if (triple.classification == TripleClass::kAllArithmetic) {
      return closed_form_outcome(SpdMatrix(aggregate_matrix(ops, profile.p)), profile.p,
                                 profile.spectral_gap, true);
    }
    const bool all_harmonic =
        triple.sigma[0].kind() == MeanKind::kHarmonic &&
        triple.sigma[1].kind() == MeanKind::kHarmonic &&
        triple.sigma[2].kind() == MeanKind::kHarmonic;
    if (all_harmonic && a.definite() && b.definite() && c.definite()) {
      std::vector<SpdMatrix> inverses{inverse_of(a), inverse_of(b), inverse_of(c)};
      const SpdMatrix blend(aggregate_matrix(inverses, profile.p));
      return closed_form_outcome(inverse_of(blend), profile.p, profile.spectral_gap, true);
    }
  }

  const std::vector<MultiMean> means{two_var_multimean(triple.sigma[0]),
                                     two_var_multimean(triple.sigma[1]),
                                     two_var_multimean(triple.sigma[2])};
  return iterate_family(means, ops, profile.p, config, profile.spectral_gap, true);
}

AlmOutcome alm_compute_n(const std::vector<MultiMean>& means,
                         const std::vector<SpdMatrix>& operators,
                         const AlmConfig& config) {
  check_means_shape(means, operators);
  const FamilyDiagnosis diagnosis = diagnose_family(means);
  if (!diagnosis.valid() && !config.unsafe_allow) {
    throw_family_error(diagnosis);
  }

  Eigen::VectorXd p;
  double gap = 0.0;
  bool primitive = false;
  if (diagnosis.valid()) {
    const StochasticProfile profile = gamma_from_multimeans(weight_rows(means));
    p = profile.p;
    gap = profile.spectral_gap;
    primitive = true;
  } else {
    log_warn("alm_compute_n: running outside the convergence hypotheses (unsafe)");
    const Eigen::MatrixXd gamma = gamma_matrix_from_rows(weight_rows(means));
    const PrimitivityReport report = check_primitive(gamma);
    gap = report.spectral_gap;
    primitive = report.primitive;
    try {
      p = perron_vector(gamma);
    } catch (const Error&) {
      log_warn("alm_compute_n: profile has no unique stationary vector; "
               "using uniform aggregate weights");
      p = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(means.size()),
                                    1.0 / static_cast<double>(means.size()));
    }
  }

  if (diagnosis.valid() && !config.force_iterate) {
    if (all_entries_equal(operators)) {
      return closed_form_outcome(operators[0], p, gap, primitive);
    }
    if (diagnosis.all_arithmetic) {
      return closed_form_outcome(SpdMatrix(aggregate_matrix(operators, p)), p, gap,
                                 primitive);
    }
  }
  return iterate_family(means, operators, p, config, gap, primitive);
}

MultiMean two_var_multimean(const TwoVarMean& mean) {
  MultiMean m;
  m.arity = 2;
  m.weights = Eigen::Vector2d(1.0 - mean.weight(), mean.weight());
  m.affinely_dominated = !mean.is_trivial();
  m.is_arithmetic = mean.is_arithmetic();
  m.strictly_concave = !mean.is_arithmetic() && !mean.is_trivial();
  m.permutation_invariant = mean.is_symmetric();
  m.is_trivial = mean.is_trivial();
  m.label = mean.label();
  m.evaluator = [mean](std::span<const SpdMatrix> ops, const AlmConfig&) {
    return evaluate(mean, ops[0], ops[1], 0.0);
  };
  return m;
}

MultiMean arithmetic_multimean(const Eigen::VectorXd& weights) {
  if (weights.size() < 2) {
    throw ParameterError("arithmetic_multimean: need at least 2 weights");
  }
  if (std::abs(weights.sum() - 1.0) > 1e-12) {
    throw ParameterError("arithmetic_multimean: weights sum to " +
                         std::to_string(weights.sum()) + ", expected 1");
  }
  MultiMean m;
  m.arity = static_cast<int>(weights.size());
  m.weights = weights;
  m.affinely_dominated = weights.minCoeff() > 0.0;
  m.is_arithmetic = true;
  m.strictly_concave = false;
  m.permutation_invariant =
      (weights.maxCoeff() - weights.minCoeff()) <= 1e-15;
  m.is_trivial = weights.maxCoeff() == 1.0;
  std::ostringstream label;
  label << "arithmetic[";
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (i > 0) label << ",";
    label << weights(i);
  }
  label << "]";
  m.label = label.str();
  const Eigen::VectorXd w = weights;
  m.evaluator = [w](std::span<const SpdMatrix> ops, const AlmConfig&) {
    Eigen::MatrixXd acc = w(0) * ops[0].entries();
    for (size_t i = 1; i < ops.size(); ++i) {
      acc += w(static_cast<Eigen::Index>(i)) * ops[i].entries();
    }
    return SpdMatrix(acc);
  };
  return m;
}

MultiMean build_alm_multimean(const MeanTriple& triple) {
  MultiMean m;
  m.arity = 3;
  m.weights = triple.p;
  m.affinely_dominated = true;
  m.is_arithmetic = triple.classification == TripleClass::kAllArithmetic;
  m.strictly_concave = !m.is_arithmetic;
  m.permutation_invariant = means_equal_on_grid(triple.sigma[0], triple.sigma[1]) &&
                            means_equal_on_grid(triple.sigma[1], triple.sigma[2]) &&
                            triple.sigma[0].is_symmetric();
  m.is_trivial = false;
  m.label = "alm(" + triple.sigma[0].label() + "," + triple.sigma[1].label() + "," +
            triple.sigma[2].label() + ")";
  m.evaluator = [triple](std::span<const SpdMatrix> ops, const AlmConfig& cfg) {
    return alm_compute(triple, ops[0], ops[1], ops[2], nested_config(cfg)).limit;
  };
  return m;
}

MultiMean build_tower_multimean(const std::vector<MultiMean>& components) {
  if (components.size() < 3) {
    throw DimensionMismatch("build_tower_multimean: need at least 3 components");
  }
  const int arity = static_cast<int>(components.size()) - 1;
  for (size_t k = 0; k < components.size(); ++k) {
    if (components[k].arity != arity) {
      throw DimensionMismatch("build_tower_multimean: component " + std::to_string(k) +
                              " has arity " + std::to_string(components[k].arity) +
                              ", expected " + std::to_string(arity));
    }
  }
  const FamilyDiagnosis diagnosis = diagnose_family(components);
  if (!diagnosis.valid()) throw_family_error(diagnosis);
  const StochasticProfile profile = gamma_from_multimeans(weight_rows(components));

  MultiMean m;
  m.arity = static_cast<int>(components.size());
  m.weights = profile.p;
  m.affinely_dominated = true;
  m.is_arithmetic = diagnosis.all_arithmetic;
  m.strictly_concave = !m.is_arithmetic;
  bool uniform = true;
  for (size_t k = 0; k + 1 < components.size(); ++k) {
    if (components[k].label != components[k + 1].label) uniform = false;
  }
  m.permutation_invariant = uniform && components[0].permutation_invariant;
  m.is_trivial = false;
  m.label = "tower(" + components[0].label + ",...)";
  const std::vector<MultiMean> parts = components;
  m.evaluator = [parts](std::span<const SpdMatrix> ops, const AlmConfig& cfg) {
    const std::vector<SpdMatrix> operands(ops.begin(), ops.end());
    return alm_compute_n(parts, operands, nested_config(cfg)).limit;
  };
  return m;
}

Eigen::VectorXd estimate_weight_vector(const MultiMean& mean, double h) {
  if (!(h > 0.0 && h < 0.5)) {
    throw ParameterError("estimate_weight_vector: step " + std::to_string(h) +
                         " outside (0, 0.5)");
  }
  if (!mean.evaluator) {
    throw ParameterError("estimate_weight_vector: mean has no evaluator");
  }
  AlmConfig cfg;
  cfg.tol = 1e-14;
  cfg.trace_every = cfg.max_iter;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd estimate(mean.arity);
  for (int j = 0; j < mean.arity; ++j) {
    std::vector<SpdMatrix> plus;
    std::vector<SpdMatrix> minus;
    for (int i = 0; i < mean.arity; ++i) {
      const double up = (i == j) ? 1.0 + h : 1.0;
      const double down = (i == j) ? 1.0 - h : 1.0;
      plus.push_back(SpdMatrix::diagonal(ones * up));
      minus.push_back(SpdMatrix::diagonal(ones * down));
    }
    const double fp = mean.evaluator(std::span<const SpdMatrix>(plus), cfg).entries()(0, 0);
    const double fm = mean.evaluator(std::span<const SpdMatrix>(minus), cfg).entries()(0, 0);
    estimate(j) = (fp - fm) / (2.0 * h);
  }
  const double deviation = std::abs(estimate.sum() - 1.0);
  if (deviation > 1e-3) {
    throw WeightEstimationFailure("estimated weights sum to " +
                                  std::to_string(estimate.sum()) +
                                  "; deviation exceeds 1e-3");
  }
  return estimate;
}

OrderedRunResult ordered_convergence_run(const MultiMean& mean,
                                         const std::vector<SpdMatrix>& descending,
                                         const AlmConfig& config) {
  if (!mean.permutation_invariant) {
    throw PreconditionError("ordered_convergence_run: mean must be permutation invariant");
  }
  const size_t count = descending.size();
  if (static_cast<int>(count) != mean.arity + 1) {
    throw DimensionMismatch("ordered_convergence_run: " + std::to_string(count) +
                            " operators for arity " + std::to_string(mean.arity));
  }
  require_same_dims(descending, "ordered_convergence_run");
  for (const SpdMatrix& x : descending) {
    if (!x.definite()) {
      throw PreconditionError("ordered_convergence_run: operators must be definite");
    }
  }
  const double scale = std::max(descending[0].lambda_max(), 1.0);
  for (size_t i = 0; i + 1 < count; ++i) {
    if (!loewner_leq(descending[i + 1], descending[i], 1e-12 * scale)) {
      throw PreconditionError("ordered_convergence_run: operators are not descending at "
                              "position " + std::to_string(i));
    }
  }

  const std::vector<MultiMean> family(count, mean);
  const FamilyDiagnosis diagnosis = diagnose_family(family);
  if (!diagnosis.valid()) throw_family_error(diagnosis);
  const StochasticProfile profile = gamma_from_multimeans(weight_rows(family));

  OrderedRunResult result;
  result.worst_pattern_violation = std::numeric_limits<double>::infinity();
  std::vector<Eigen::MatrixXd> head_history;
  const StepObserver observer = [&](long iteration, const std::vector<SpdMatrix>& ops) {
    head_history.push_back(ops[0].entries());
    for (size_t i = 0; i + 1 < ops.size(); ++i) {
      // Even steps descend, odd steps ascend.
      const Eigen::MatrixXd diff = (iteration % 2 == 0)
                                       ? ops[i].entries() - ops[i + 1].entries()
                                       : ops[i + 1].entries() - ops[i].entries();
      result.worst_pattern_violation =
          std::min(result.worst_pattern_violation, min_eigenvalue(diff));
    }
  };

  // The interleaving pattern is the point; never shortcut through a closed
  // form here.
  result.outcome =
      iterate_family(family, descending, profile.p, config, profile.spectral_gap,
                     true, &observer);
  result.residuals.reserve(head_history.size());
  for (const Eigen::MatrixXd& head : head_history) {
    result.residuals.push_back((head - result.outcome.limit.entries()).norm());
  }
  return result;
}

}  // namespace almeans
