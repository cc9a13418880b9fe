// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ALMEANS_ENGINE_HPP_
#define ALMEANS_ENGINE_HPP_

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "almeans/mean2.hpp"
#include "almeans/stochastic.hpp"

namespace almeans {

struct AlmConfig {
  // Stop when the largest pairwise Thompson distance among the iterates
  // drops to tol.
  double tol = 1e-12;
  long max_iter = 10000;
  // Base shift for semidefinite inputs. Defaults to 1e-10 times the mean
  // input trace. Ignored when every input is definite.
  std::optional<double> eps_shift;
  // The shift ladder multiplies the base by this factor per rung.
  double eps_ladder_factor = 0.1;
  int eps_ladder_length = 4;
  // Trace sampling stride (iteration 0 and the final step always record).
  long trace_every = 1;
  // Skip the closed-form fast paths and iterate (used for cross-checks).
  bool force_iterate = false;
  // Run constructions outside the convergence hypotheses instead of
  // raising; such runs never take fast paths and report MaxIter instead of
  // throwing NonConverged.
  bool unsafe_allow = false;
};

enum class StopReason { kConverged, kMaxIter, kClosedForm };

const char* stop_reason_name(StopReason reason);

struct TraceEntry {
  long iteration = 0;
  // Largest pairwise Thompson distance among the iterates.
  double max_thompson = 0.0;
  // ||S_{m-1} - S_m||_F for the weighted aggregate S (0 at iteration 0).
  double aggregate_step_fro = 0.0;
  // lambda_min(S_{m-1} - S_m); negative means the monotone aggregate
  // overshot (0 at iteration 0).
  double aggregate_drop_min_eig = 0.0;
  // <x, S_m x> for the fixed probe x = ones/sqrt(dim): scalar witness of
  // the decreasing aggregate.
  double probe_quadratic = 0.0;
};

struct LadderRung {
  double eps = 0.0;
  long iterations = 0;
  // lambda_min(previous rung limit - this limit); the ladder descends, so
  // this should not dip below the monotonicity slack.
  double drop_min_eig = 0.0;
};

struct AlmOutcome {
  // Placeholder until a run fills it (SpdMatrix itself has no empty state).
  SpdMatrix limit = SpdMatrix::identity(1);
  Eigen::VectorXd p;
  long iterations = 0;
  StopReason stop_reason = StopReason::kConverged;
  double final_max_thompson = 0.0;
  // Most negative lambda_min(S_{m-1} - S_m) seen; 0 when nothing iterated.
  double s_monotone_violation = 0.0;
  double spectral_gap = 0.0;
  bool primitive = true;
  std::vector<TraceEntry> trace;
  // Nonempty iff the shift ladder ran (semidefinite input).
  std::vector<LadderRung> ladder;
};

// Thrown when the iteration hits max_iter above tol and unsafe_allow is
// off. Carries the full outcome for diagnosis.
class NonConverged : public Error {
 public:
  NonConverged(const std::string& message, AlmOutcome outcome);
  const AlmOutcome& outcome() const { return outcome_; }

 private:
  AlmOutcome outcome_;
};

enum class TripleClass { kAllArithmetic, kAtMostOneArithmetic };

struct MeanTriple {
  std::array<TwoVarMean, 3> sigma;
  // Stationary weights in closed form (closed_form_p3 of the weights).
  Eigen::Vector3d p;
  TripleClass classification = TripleClass::kAtMostOneArithmetic;
};

// An n-variable operator mean as the engine consumes it. `weights` are the
// coefficients of the dominating affine combination (all positive, summing
// to 1, when affinely_dominated holds). The evaluator must accept any
// certified inputs of matching dim; the config is forwarded so nested
// iterations inherit tolerances.
struct MultiMean {
  int arity = 0;
  Eigen::VectorXd weights;
  bool affinely_dominated = false;
  bool is_arithmetic = false;
  bool strictly_concave = false;
  bool permutation_invariant = false;
  bool is_trivial = false;
  std::string label;
  std::function<SpdMatrix(std::span<const SpdMatrix>, const AlmConfig&)> evaluator;
};

// Classifies a mean family: trivial members are InvalidTriple; two or more
// arithmetic means alongside a non-arithmetic one are a HypothesisViolation
// (for two-variable means, non-arithmetic is equivalent to strictly
// concave).
MeanTriple validate_triple(const TwoVarMean& s1, const TwoVarMean& s2,
                           const TwoVarMean& s3);

// One recursion step: (B s1 C, C s2 A, A s3 B), each evaluated with shift.
std::array<SpdMatrix, 3> alm_step(const MeanTriple& triple, const SpdMatrix& a,
                                  const SpdMatrix& b, const SpdMatrix& c,
                                  double eps = 0.0);

// Runs the three-operator recursion to its common limit. The reported limit
// is the weighted aggregate p1 A_m + p2 B_m + p3 C_m at the stopping index
// (monotonically decreasing along the iteration). Fast paths (unless
// force_iterate): byte-identical inputs return immediately; all-arithmetic
// triples return the aggregate of the inputs; all-harmonic triples on
// definite inputs return the harmonic closed form. Semidefinite inputs run
// the descending shift ladder and the last rung is returned.
AlmOutcome alm_compute(const MeanTriple& triple, const SpdMatrix& a,
                       const SpdMatrix& b, const SpdMatrix& c,
                       const AlmConfig& config = {});

// The general recursion on n+1 operators with n-variable means:
// X_k <- M_k(X_{k+1 mod n+1}, ..., X_{k+n mod n+1}). Hypotheses (no trivial
// member, affine domination, at most one non-strictly-concave unless all
// arithmetic, primitive profile) are enforced unless unsafe_allow is set.
AlmOutcome alm_compute_n(const std::vector<MultiMean>& means,
                         const std::vector<SpdMatrix>& operators,
                         const AlmConfig& config = {});

// Adapters and constructors for MultiMean.
MultiMean two_var_multimean(const TwoVarMean& mean);
MultiMean arithmetic_multimean(const Eigen::VectorXd& weights);
// The 3-variable mean computed by alm_compute for this triple; its weight
// vector is the triple's p. Nested evaluations tighten tol by 1e-2 (capped
// at 1e-14) so outer iterations see a stable map.
MultiMean build_alm_multimean(const MeanTriple& triple);
// The (n+1)-variable mean computed by alm_compute_n for these components
// (validated against the convergence hypotheses on construction).
MultiMean build_tower_multimean(const std::vector<MultiMean>& components);

// Central-difference weights of M at the identity: perturbs argument j to
// 1 +- h on 1x1 operators. The result must sum to 1 within 1e-3
// (WeightEstimationFailure beyond that; well-behaved means land within
// 1e-4).
Eigen::VectorXd estimate_weight_vector(const MultiMean& mean, double h = 1e-5);

struct OrderedRunResult {
  AlmOutcome outcome;
  // Signed interleaving margin: min over recorded steps and adjacent pairs
  // of lambda_min(ordered difference); even steps expect descending
  // iterates, odd steps ascending.
  double worst_pattern_violation = 0.0;
  // ||X^{(0)}_m - limit||_F per step (strong-convergence witness).
  std::vector<double> residuals;
};

// Runs the uniform recursion (M, ..., M) on operators sorted descending in
// the Loewner order. M must be permutation invariant and the inputs ordered
// (PreconditionError otherwise).
OrderedRunResult ordered_convergence_run(const MultiMean& mean,
                                         const std::vector<SpdMatrix>& descending,
                                         const AlmConfig& config = {});

}  // namespace almeans

#endif  // ALMEANS_ENGINE_HPP_
