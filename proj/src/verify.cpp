// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include "almeans/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "almeans/rng.hpp"
#include "almeans/thompson.hpp"

namespace almeans {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Check-running scaffolding.

struct Ctx {
  Sampler sampler;
  long trials;       // requested trial count (0 for fixed-shape checks)
  std::string name;
  long records = 0;
  long failures = 0;
  double worst = kInf;
  std::string witness;

  using WitnessFn = std::function<ordered_json()>;

  // margin >= 0 passes; the first failing record freezes a witness.
  void record(double margin, const WitnessFn& details = {}) {
    if (std::isnan(margin)) margin = -1e300;
    ++records;
    worst = std::min(worst, margin);
    if (margin < 0.0) {
      ++failures;
      if (witness.empty()) {
        ordered_json w;
        w["check"] = name;
        w["record"] = records - 1;
        w["margin"] = margin;
        if (details) w["inputs"] = details();
        witness = dump_json(w);
      }
    }
  }

  void expect(bool ok, const WitnessFn& details = {}) {
    record(ok ? 0.0 : -1.0, details);
  }
};

PropertyCheck make_check(std::string name, std::string law,
                         std::vector<std::string> covers, long default_trials,
                         std::function<void(Ctx&)> body) {
  PropertyCheck check;
  check.name = name;
  check.law = std::move(law);
  check.covers = std::move(covers);
  check.default_trials = default_trials;
  check.run = [name, default_trials, body](std::uint64_t seed, long trials) {
    Ctx ctx{Sampler(seed), 0, name, 0, 0, kInf, std::string()};
    ctx.trials = default_trials == 0 ? 0 : (trials > 0 ? trials : default_trials);
    try {
      body(ctx);
    } catch (const Error& e) {
      // An escaped exception is a failure of this check, not of the suite.
      const std::string message = e.what();
      ctx.record(-1.0, [&message] {
        ordered_json j;
        j["exception"] = message;
        return j;
      });
    }
    CheckResult result;
    result.name = name;
    result.trials = ctx.trials > 0 ? ctx.trials : ctx.records;
    result.failures = ctx.failures;
    result.worst_margin = ctx.worst == kInf ? 0.0 : ctx.worst;
    result.witness = ctx.witness;
    return result;
  };
  return check;
}

bool glob_match(const std::string& pattern, const std::string& text) {
  size_t p = 0, t = 0;
  size_t star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

// ---------------------------------------------------------------------------
// Sampling helpers.
//
// The default fixture generator uses the documented log-uniform spectrum
// [1e-2, 1e2] (condition <= 1e4). Checks that push matrices through the
// full iteration use a moderate band [0.25, 4] instead: the stopping rule
// works at Thompson 1e-12, and the eigensolver noise floor on a condition-
// 1e4 matrix sits at the same magnitude, which would turn honest checks
// into coin flips.

SpdMatrix wide_spd(Sampler& s, Eigen::Index dim) { return s.spd(dim, 1e-2, 1e2); }
SpdMatrix moderate_spd(Sampler& s, Eigen::Index dim) { return s.spd(dim, 0.25, 4.0); }

TwoVarMean sample_concave_mean(Sampler& s) {
  const double r = s.uniform(0.15, 0.85);
  return make_mean(s.uniform_int(0, 1) == 0 ? MeanKind::kGeometric : MeanKind::kHarmonic, r);
}

// A triple meeting the convergence hypotheses; at most one arithmetic slot.
MeanTriple sample_valid_triple(Sampler& s, bool allow_arithmetic = true) {
  const int arithmetic_slot = allow_arithmetic ? s.uniform_int(-1, 2) : -1;
  std::array<TwoVarMean, 3> sigma = {sample_concave_mean(s), sample_concave_mean(s),
                                     sample_concave_mean(s)};
  if (arithmetic_slot >= 0) {
    sigma[static_cast<size_t>(arithmetic_slot)] =
        make_mean(MeanKind::kArithmetic, s.uniform(0.15, 0.85));
  }
  return validate_triple(sigma[0], sigma[1], sigma[2]);
}

MeanTriple geometric_triple(double r1, double r2, double r3) {
  return validate_triple(make_mean(MeanKind::kGeometric, r1),
                         make_mean(MeanKind::kGeometric, r2),
                         make_mean(MeanKind::kGeometric, r3));
}

SpdMatrix run_m(const MeanTriple& triple, const SpdMatrix& a, const SpdMatrix& b,
                const SpdMatrix& c, bool force = false) {
  AlmConfig cfg;
  cfg.trace_every = cfg.max_iter;  // keep diagnostics light inside the suite
  cfg.force_iterate = force;
  return alm_compute(triple, a, b, c, cfg).limit;
}

ordered_json triple_inputs(const SpdMatrix& a, const SpdMatrix& b, const SpdMatrix& c) {
  ordered_json j;
  j["A"] = matrix_to_json(a.entries());
  j["B"] = matrix_to_json(b.entries());
  j["C"] = matrix_to_json(c.entries());
  return j;
}

double op2_norm(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd aggregate3(const Eigen::VectorXd& p, const SpdMatrix& a,
                           const SpdMatrix& b, const SpdMatrix& c) {
  return p(0) * a.entries() + p(1) * b.entries() + p(2) * c.entries();
}

// The six 5-variable means of the non-dominated construction: averaging two
// of five arguments, so some weights vanish.
std::vector<MultiMean> non_dominated_family() {
  std::vector<MultiMean> family;
  for (int k = 0; k < 6; ++k) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(5);
    if (k % 2 == 0) {
      w(1) = 0.5;
      w(2) = 0.5;
    } else {
      w(0) = 0.5;
      w(1) = 0.5;
    }
    family.push_back(arithmetic_multimean(w));
  }
  return family;
}

std::vector<Eigen::VectorXd> family_rows(const std::vector<MultiMean>& family) {
  std::vector<Eigen::VectorXd> rows;
  for (const MultiMean& m : family) rows.push_back(m.weights);
  return rows;
}

// ---------------------------------------------------------------------------
// Registry.

void register_linalg(std::vector<PropertyCheck>& reg) {
  reg.push_back(make_check(
      "linalg.spectral_identity",
      "reassembling the cached eigensystem with f(t)=t reproduces the matrix "
      "within 100*dim*eps*|A|_F",
      {"linalg.spectral_identity_map"}, 50, [](Ctx& ctx) {
        SpectralFunction ident{"identity", [](double t) { return t; }, 0.0};
        for (long t = 0; t < ctx.trials; ++t) {
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 8);
          const SpdMatrix a = wide_spd(ctx.sampler, dim);
          const double err = (apply_spectral_function(a, ident) - a.entries()).norm();
          const double tol = 100.0 * static_cast<double>(dim) *
                             std::numeric_limits<double>::epsilon() * a.entries().norm();
          ctx.record(tol - err, [&] { return matrix_to_json(a.entries()); });
        }
      }));

  reg.push_back(make_check(
      "linalg.sqrt_squares_back",
      "the spectral square root squared recovers A within 1e-10*|A|_F up to dim 16",
      {"linalg.sqrt_squares_back"}, 50, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 16);
          const SpdMatrix a = wide_spd(ctx.sampler, dim);
          const Eigen::MatrixXd root = sqrt_of(a);
          const double err = (root * root - a.entries()).norm();
          ctx.record(1e-10 * a.entries().norm() - err,
                     [&] { return matrix_to_json(a.entries()); });
        }
      }));

  reg.push_back(make_check(
      "linalg.congruence_roundtrip",
      "congruence by S then by S^-1 returns A within 1e-7 relative",
      {"linalg.congruence_roundtrip"}, 50, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 6);
          const SpdMatrix a = wide_spd(ctx.sampler, dim);
          const Eigen::MatrixXd s = ctx.sampler.symmetric_invertible(dim);
          const Eigen::MatrixXd s_inv = s.inverse();
          const SpdMatrix back = congruence(0.5 * (s_inv + s_inv.transpose()),
                                            congruence(s, a));
          const double err = (back.entries() - a.entries()).norm();
          ctx.record(1e-7 * a.entries().norm() - err,
                     [&] { return matrix_to_json(a.entries()); });
        }
      }));

  reg.push_back(make_check(
      "linalg.loewner_partial_order",
      "the semidefinite order is reflexive, antisymmetric within slack, and "
      "transitive on diagonal chains",
      {"linalg.loewner_partial_order"}, 100, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 6);
          Eigen::VectorXd d1(dim), bump1(dim), bump2(dim);
          for (Eigen::Index i = 0; i < dim; ++i) {
            d1(i) = ctx.sampler.uniform(0.1, 5.0);
            bump1(i) = ctx.sampler.uniform(0.0, 2.0);
            bump2(i) = ctx.sampler.uniform(0.0, 2.0);
          }
          const SpdMatrix a = SpdMatrix::diagonal(d1);
          const SpdMatrix b = SpdMatrix::diagonal(d1 + bump1);
          const SpdMatrix c = SpdMatrix::diagonal(d1 + bump1 + bump2);
          bool ok = loewner_leq(a, a, 0.0);
          ok = ok && loewner_leq(a, b, 0.0) && loewner_leq(b, c, 0.0) &&
               loewner_leq(a, c, 0.0);
          // Antisymmetry: mutual domination within slack pins the entries.
          if (loewner_leq(a, b, 1e-12) && loewner_leq(b, a, 1e-12)) {
            ok = ok && (a.entries() - b.entries()).cwiseAbs().maxCoeff() <=
                           1e-10 * (1.0 + a.entries().norm());
          }
          ctx.expect(ok, [&] { return matrix_to_json(a.entries()); });
        }
      }));
}

void register_mean2(std::vector<PropertyCheck>& reg) {
  reg.push_back(make_check(
      "mean2.monotone",
      "A<=C and B<=D imply mean(A,B) <= mean(C,D) with slack 1e-10, on "
      "diagonal and constructively ordered dense pairs",
      {"mean2.monotone"}, 60, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const TwoVarMean sigma = sample_concave_mean(ctx.sampler);
          const Eigen::Index dim = ctx.sampler.uniform_int(2, 5);
          // Diagonal case.
          Eigen::VectorXd a(dim), b(dim), up1(dim), up2(dim);
          for (Eigen::Index i = 0; i < dim; ++i) {
            a(i) = ctx.sampler.uniform(0.2, 4.0);
            b(i) = ctx.sampler.uniform(0.2, 4.0);
            up1(i) = ctx.sampler.uniform(0.0, 1.0);
            up2(i) = ctx.sampler.uniform(0.0, 1.0);
          }
          const SpdMatrix da = SpdMatrix::diagonal(a);
          const SpdMatrix db = SpdMatrix::diagonal(b);
          const SpdMatrix dc = SpdMatrix::diagonal(a + up1);
          const SpdMatrix dd = SpdMatrix::diagonal(b + up2);
          const double diag_margin =
              min_eigenvalue(evaluate(sigma, dc, dd).entries() -
                             evaluate(sigma, da, db).entries());
          // Dense case, ordered by construction.
          const SpdMatrix ga = moderate_spd(ctx.sampler, dim);
          const SpdMatrix gb = moderate_spd(ctx.sampler, dim);
          const Eigen::MatrixXd p1 = 0.4 * ctx.sampler.gaussian_matrix(dim, dim);
          const Eigen::MatrixXd p2 = 0.4 * ctx.sampler.gaussian_matrix(dim, dim);
          const SpdMatrix gc(ga.entries() + p1 * p1.transpose());
          const SpdMatrix gd(gb.entries() + p2 * p2.transpose());
          const double dense_margin =
              min_eigenvalue(evaluate(sigma, gc, gd).entries() -
                             evaluate(sigma, ga, gb).entries());
          ctx.record(std::min(diag_margin, dense_margin) + 1e-10, [&] {
            ordered_json j;
            j["A"] = matrix_to_json(ga.entries());
            j["B"] = matrix_to_json(gb.entries());
            j["mean"] = mean_to_json(sigma);
            return j;
          });
        }
      }));

  reg.push_back(make_check(
      "mean2.transformer",
      "T (A mean B) T <= (TAT) mean (TBT) with slack 1e-8 for definite T",
      {"mean2.transformer"}, 60, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const TwoVarMean sigma = sample_concave_mean(ctx.sampler);
          const Eigen::Index dim = ctx.sampler.uniform_int(2, 5);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix tr = ctx.sampler.spd(dim, 0.2, 3.0);
          const SpdMatrix lhs = congruence(tr, evaluate(sigma, a, b));
          const SpdMatrix rhs =
              evaluate(sigma, congruence(tr, a), congruence(tr, b));
          ctx.record(min_eigenvalue(rhs.entries() - lhs.entries()) + 1e-8, [&] {
            ordered_json j = triple_inputs(a, b, tr);
            j["mean"] = mean_to_json(sigma);
            return j;
          });
        }
      }));

  reg.push_back(make_check(
      "mean2.strict_concavity_scalar",
      "non-arithmetic means sit strictly below their affine chord off the "
      "diagonal: (1-r)a + rb - mean(a,b) > 0 for a != b",
      {"mean2.strict_concavity_scalar"}, 40, [](Ctx& ctx) {
        const double grid[] = {0.1, 0.5, 1.0, 2.0, 10.0};
        for (long t = 0; t < ctx.trials; ++t) {
          const TwoVarMean sigma = sample_concave_mean(ctx.sampler);
          const double r = sigma.weight();
          double min_gap = kInf;
          for (double a : grid) {
            for (double b : grid) {
              if (a == b) continue;
              const double chord = (1.0 - r) * a + r * b;
              min_gap = std::min(min_gap, chord - scalar_mean(sigma, a, b));
            }
          }
          ctx.record(min_gap - 1e-12, [&] { return mean_to_json(sigma); });
        }
      }));

  reg.push_back(make_check(
      "mean2.adjoint_involution",
      "taking the adjoint twice returns the original representing function "
      "(grid agreement within 1e-12)",
      {"mean2.adjoint_involution"}, 20, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          TwoVarMean sigma = sample_concave_mean(ctx.sampler);
          if (t % 4 == 3) sigma = make_mean(MeanKind::kArithmetic, ctx.sampler.uniform(0.2, 0.8));
          ctx.expect(means_equal_on_grid(adjoint_mean(adjoint_mean(sigma)), sigma),
                     [&] { return mean_to_json(sigma); });
        }
      }));

  reg.push_back(make_check(
      "mean2.transpose_involution",
      "taking the transpose twice returns the original representing function",
      {"mean2.transpose_involution"}, 20, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          TwoVarMean sigma = sample_concave_mean(ctx.sampler);
          if (t % 4 == 3) sigma = make_mean(MeanKind::kArithmetic, ctx.sampler.uniform(0.2, 0.8));
          ctx.expect(means_equal_on_grid(transpose_mean(transpose_mean(sigma)), sigma),
                     [&] { return mean_to_json(sigma); });
        }
      }));

  reg.push_back(make_check(
      "mean2.commuting_diagonal",
      "on a shared eigenbasis the matrix mean is the entrywise scalar mean "
      "within 1e-10 relative",
      {"mean2.commuting_diagonal"}, 50, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const TwoVarMean sigma = sample_concave_mean(ctx.sampler);
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 6);
          const Eigen::MatrixXd q = ctx.sampler.orthogonal(dim);
          Eigen::VectorXd la(dim), lb(dim);
          for (Eigen::Index i = 0; i < dim; ++i) {
            la(i) = ctx.sampler.log_uniform(0.1, 10.0);
            lb(i) = ctx.sampler.log_uniform(0.1, 10.0);
          }
          const SpdMatrix a(q * la.asDiagonal() * q.transpose());
          const SpdMatrix b(q * lb.asDiagonal() * q.transpose());
          Eigen::VectorXd lm(dim);
          for (Eigen::Index i = 0; i < dim; ++i) lm(i) = scalar_mean(sigma, la(i), lb(i));
          const Eigen::MatrixXd expected = q * lm.asDiagonal() * q.transpose();
          const double err = (evaluate(sigma, a, b).entries() - expected).norm();
          ctx.record(1e-10 * (1.0 + expected.norm()) - err, [&] {
            ordered_json j;
            j["A"] = matrix_to_json(a.entries());
            j["B"] = matrix_to_json(b.entries());
            j["mean"] = mean_to_json(sigma);
            return j;
          });
        }
      }));

  reg.push_back(make_check(
      "mean2.transfer2",
      "the quadratic form of a matrix mean is dominated by the scalar mean "
      "of the quadratic forms (slack 1e-10)",
      {}, 200, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const TwoVarMean sigma = sample_concave_mean(ctx.sampler);
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 6);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const Eigen::VectorXd x = ctx.sampler.unit_vector(dim);
          ctx.expect(scalar_mean_inequality_check(sigma, a, b, x), [&] {
            ordered_json j;
            j["A"] = matrix_to_json(a.entries());
            j["B"] = matrix_to_json(b.entries());
            j["mean"] = mean_to_json(sigma);
            return j;
          });
        }
      }));
}

void register_stochastic(std::vector<PropertyCheck>& reg) {
  reg.push_back(make_check(
      "stochastic.gamma_power_converges",
      "for primitive profiles the 200th power has every row equal to p "
      "within 1e-8 (3x3 and 5x5)",
      {"stochastic.gamma_power_converges"}, 30, [](Ctx& ctx) {
        const auto run_case = [&ctx](const StochasticProfile& profile) {
          Eigen::MatrixXd power =
              Eigen::MatrixXd::Identity(profile.gamma.rows(), profile.gamma.cols());
          for (int m = 0; m < 200; ++m) power = power * profile.gamma;
          double err = 0.0;
          for (Eigen::Index i = 0; i < power.rows(); ++i) {
            err = std::max(err,
                           (power.row(i).transpose() - profile.p).cwiseAbs().maxCoeff());
          }
          ctx.record(1e-8 - err, [&] { return matrix_to_json(profile.gamma); });
        };
        for (long t = 0; t < ctx.trials; ++t) {
          run_case(gamma_from_weights_3(ctx.sampler.uniform(0.1, 0.9),
                                        ctx.sampler.uniform(0.1, 0.9),
                                        ctx.sampler.uniform(0.1, 0.9)));
          std::vector<Eigen::VectorXd> rows;
          for (int k = 0; k < 5; ++k) {
            Eigen::VectorXd w(4);
            for (int i = 0; i < 4; ++i) w(i) = ctx.sampler.uniform(0.1, 1.0);
            rows.push_back(w / w.sum());
          }
          run_case(gamma_from_multimeans(rows));
        }
      }));

  reg.push_back(make_check(
      "stochastic.closed_form_grid",
      "the closed-form stationary vector matches the linear solve within "
      "1e-12 over a 10x10x10 weight grid",
      {"stochastic.closed_form_grid"}, 0, [](Ctx& ctx) {
        for (int i = 0; i < 10; ++i) {
          for (int j = 0; j < 10; ++j) {
            for (int k = 0; k < 10; ++k) {
              const double r1 = 0.05 + 0.9 * i / 9.0;
              const double r2 = 0.05 + 0.9 * j / 9.0;
              const double r3 = 0.05 + 0.9 * k / 9.0;
              const StochasticProfile profile = gamma_from_weights_3(r1, r2, r3);
              const Eigen::Vector3d closed = closed_form_p3(r1, r2, r3);
              const double err = (profile.p - closed).lpNorm<Eigen::Infinity>();
              ctx.record(1e-12 - err, [&] { return matrix_to_json(profile.gamma); });
            }
          }
        }
      }));

  reg.push_back(make_check(
      "stochastic.cyclic_relabel",
      "cyclically permuting the three weights cyclically permutes the "
      "stationary vector",
      {"stochastic.cyclic_relabel"}, 0, [](Ctx& ctx) {
        for (int i = 0; i < 10; ++i) {
          for (int j = 0; j < 10; ++j) {
            for (int k = 0; k < 10; ++k) {
              const double r1 = 0.05 + 0.9 * i / 9.0;
              const double r2 = 0.05 + 0.9 * j / 9.0;
              const double r3 = 0.05 + 0.9 * k / 9.0;
              const Eigen::Vector3d p = closed_form_p3(r1, r2, r3);
              const Eigen::Vector3d q = closed_form_p3(r2, r3, r1);
              const double err = std::max({std::abs(q(0) - p(1)), std::abs(q(1) - p(2)),
                                           std::abs(q(2) - p(0))});
              ctx.record(1e-13 - err, [&] {
                ordered_json j;
                j["weights"] = {r1, r2, r3};
                return j;
              });
            }
          }
        }
      }));

  reg.push_back(make_check(
      "stochastic.noncauchy",
      "powers of the cyclic 3x3 and block-cyclic 6x6 profiles never settle: "
      "successive powers stay apart up to m = 200",
      {"stochastic.noncauchy"}, 0, [](Ctx& ctx) {
        const auto floor_of = [](const Eigen::MatrixXd& gamma) {
          Eigen::MatrixXd power = Eigen::MatrixXd::Identity(gamma.rows(), gamma.cols());
          double lo = kInf;
          for (int m = 0; m < 200; ++m) {
            const Eigen::MatrixXd next = power * gamma;
            lo = std::min(lo, (next - power).cwiseAbs().maxCoeff());
            power = next;
          }
          return lo;
        };
        Eigen::MatrixXd cyclic3(3, 3);
        cyclic3 << 0, 1, 0, 0, 0, 1, 1, 0, 0;
        ctx.record(floor_of(cyclic3) - 0.1,
                   [&] { return matrix_to_json(cyclic3); });
        const Eigen::MatrixXd gamma6 = gamma_matrix_from_rows(family_rows(non_dominated_family()));
        ctx.record(floor_of(gamma6) - 0.1, [&] { return matrix_to_json(gamma6); });
      }));
}

void register_axioms(std::vector<PropertyCheck>& reg) {
  reg.push_back(make_check(
      "axiom.monotone",
      "the induced three-variable mean is monotone under semidefinite bumps "
      "of each input (slack 1e-9)",
      {"engine.axiom_monotone"}, 40, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = sample_valid_triple(ctx.sampler);
          const Eigen::Index dim = ctx.sampler.uniform_int(2, 4);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const auto bump = [&ctx, dim](const SpdMatrix& x) {
            const Eigen::MatrixXd g = 0.3 * ctx.sampler.gaussian_matrix(dim, dim);
            return SpdMatrix(x.entries() + g * g.transpose());
          };
          const SpdMatrix lhs = run_m(triple, a, b, c);
          const SpdMatrix rhs = run_m(triple, bump(a), bump(b), bump(c));
          ctx.record(min_eigenvalue(rhs.entries() - lhs.entries()) + 1e-8,
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "axiom.transformer",
      "T M(A,B,C) T <= M(TAT,TBT,TCT) with slack 1e-8 for definite T",
      {"engine.axiom_transformer"}, 40, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = sample_valid_triple(ctx.sampler);
          const Eigen::Index dim = ctx.sampler.uniform_int(2, 4);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const SpdMatrix tr = ctx.sampler.spd(dim, 0.25, 3.0);
          const SpdMatrix lhs = congruence(tr, run_m(triple, a, b, c));
          const SpdMatrix rhs =
              run_m(triple, congruence(tr, a), congruence(tr, b), congruence(tr, c));
          ctx.record(min_eigenvalue(rhs.entries() - lhs.entries()) + 1e-8,
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "axiom.congruence",
      "invertible symmetric S gives S M(A,B,C) S = M(SAS,SBS,SCS) within 1e-8",
      {"engine.axiom_congruence"}, 40, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = sample_valid_triple(ctx.sampler);
          const Eigen::Index dim = ctx.sampler.uniform_int(2, 4);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const Eigen::MatrixXd s = ctx.sampler.symmetric_invertible(dim);
          const SpdMatrix lhs = congruence(s, run_m(triple, a, b, c));
          const SpdMatrix rhs =
              run_m(triple, congruence(s, a), congruence(s, b), congruence(s, c));
          const double err = (lhs.entries() - rhs.entries()).norm();
          ctx.record(1e-8 - err, [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "axiom.continuity",
      "along inputs decreasing to a limit the induced mean decreases to the "
      "limit value (downward continuity, finite ladder)",
      {}, 20, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = sample_valid_triple(ctx.sampler);
          const Eigen::Index dim = ctx.sampler.uniform_int(2, 4);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const SpdMatrix at_limit = run_m(triple, a, b, c);
          double delta = 0.1;
          double worst = kInf;
          SpdMatrix prev = run_m(triple, a.shifted(delta), b.shifted(delta),
                                 c.shifted(delta));
          SpdMatrix last = prev;
          for (int k = 1; k < 6; ++k) {
            delta *= 0.5;
            const SpdMatrix cur = run_m(triple, a.shifted(delta), b.shifted(delta),
                                        c.shifted(delta));
            worst = std::min(worst, min_eigenvalue(prev.entries() - cur.entries()));
            // The ladder must also stay above the limit value.
            worst = std::min(worst, min_eigenvalue(cur.entries() - at_limit.entries()));
            prev = cur;
            last = cur;
          }
          const double tail = (last.entries() - at_limit.entries()).norm();
          // First-order tail budget: shifts enter the mean with Lipschitz
          // factor <= gauge of the inputs, about 16 here, times sqrt(dim).
          const double tail_margin = 50.0 * delta - tail;
          ctx.record(std::min(worst + 1e-9, tail_margin),
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "axiom.normalization",
      "M(I,I,I) = I exactly on the fast path and within 1e-14 when iterated",
      {"engine.axiom_normalization"}, 0, [](Ctx& ctx) {
        const std::vector<MeanTriple> triples = {
            geometric_triple(0.5, 0.5, 0.5),
            validate_triple(make_mean(MeanKind::kArithmetic, 0.3),
                            make_mean(MeanKind::kHarmonic, 0.5),
                            make_mean(MeanKind::kGeometric, 0.7)),
            validate_triple(make_mean(MeanKind::kHarmonic, 0.25),
                            make_mean(MeanKind::kHarmonic, 0.5),
                            make_mean(MeanKind::kHarmonic, 0.75))};
        for (const MeanTriple& triple : triples) {
          for (Eigen::Index dim : {1, 3, 5}) {
            const SpdMatrix id = SpdMatrix::identity(dim);
            const SpdMatrix fast = run_m(triple, id, id, id);
            ctx.expect(fast.entries() == Eigen::MatrixXd::Identity(dim, dim));
            const SpdMatrix forced = run_m(triple, id, id, id, /*force=*/true);
            const double err =
                (forced.entries() - Eigen::MatrixXd::Identity(dim, dim)).norm();
            ctx.record(1e-14 - err);
          }
        }
      }));
}

void register_oracles(std::vector<PropertyCheck>& reg) {
  reg.push_back(make_check(
      "oracle.arithmetic_uniform",
      "all-arithmetic triples converge to the p-weighted sum: exact on the "
      "fast path, within 1e-10 when iterated",
      {}, 50, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple =
              validate_triple(make_mean(MeanKind::kArithmetic, ctx.sampler.uniform(0.15, 0.85)),
                              make_mean(MeanKind::kArithmetic, ctx.sampler.uniform(0.15, 0.85)),
                              make_mean(MeanKind::kArithmetic, ctx.sampler.uniform(0.15, 0.85)));
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 6);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          AlmConfig cfg;
          cfg.trace_every = cfg.max_iter;
          const AlmOutcome fast = alm_compute(triple, a, b, c, cfg);
          // Exactness is against the stationary vector the run reports
          // (itself pinned to the closed form within 1e-12), accumulated in
          // the engine's summation order.
          Eigen::MatrixXd expected = fast.p(0) * a.entries();
          expected += fast.p(1) * b.entries();
          expected += fast.p(2) * c.entries();
          ctx.expect(fast.stop_reason == StopReason::kClosedForm &&
                         fast.limit.entries() == expected,
                     [&] { return triple_inputs(a, b, c); });
          const SpdMatrix forced = run_m(triple, a, b, c, /*force=*/true);
          ctx.record(1e-10 - (forced.entries() - expected).norm(),
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "oracle.geometric_commuting",
      "on commuting inputs the all-geometric limit is the spectral weighted "
      "product within 1e-8 Frobenius",
      {}, 50, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const double r1 = ctx.sampler.uniform(0.15, 0.85);
          const double r2 = ctx.sampler.uniform(0.15, 0.85);
          const double r3 = ctx.sampler.uniform(0.15, 0.85);
          const MeanTriple triple = geometric_triple(r1, r2, r3);
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 8);
          const auto [a, b, c] = ctx.sampler.commuting_triple(dim);
          // Spectral oracle in the shared eigenbasis.
          const Eigen::MatrixXd q = a.spectral().eigenvectors;
          const auto diag_in_q = [&q](const SpdMatrix& x) {
            return (q.transpose() * x.entries() * q).diagonal().eval();
          };
          const Eigen::VectorXd la = diag_in_q(a);
          const Eigen::VectorXd lb = diag_in_q(b);
          const Eigen::VectorXd lc = diag_in_q(c);
          Eigen::VectorXd lm(dim);
          for (Eigen::Index i = 0; i < dim; ++i) {
            lm(i) = std::pow(la(i), triple.p(0)) * std::pow(lb(i), triple.p(1)) *
                    std::pow(lc(i), triple.p(2));
          }
          const Eigen::MatrixXd expected = q * lm.asDiagonal() * q.transpose();
          const SpdMatrix got = run_m(triple, a, b, c);
          ctx.record(1e-8 - (got.entries() - expected).norm(),
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "oracle.harmonic",
      "all-harmonic triples equal the inverse of the p-weighted inverse sum: "
      "closed form on the fast path, within 1e-8 when iterated",
      {}, 50, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple =
              validate_triple(make_mean(MeanKind::kHarmonic, ctx.sampler.uniform(0.15, 0.85)),
                              make_mean(MeanKind::kHarmonic, ctx.sampler.uniform(0.15, 0.85)),
                              make_mean(MeanKind::kHarmonic, ctx.sampler.uniform(0.15, 0.85)));
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 6);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const Eigen::MatrixXd blend = triple.p(0) * inverse_of(a).entries() +
                                        triple.p(1) * inverse_of(b).entries() +
                                        triple.p(2) * inverse_of(c).entries();
          const Eigen::MatrixXd expected = inverse_of(SpdMatrix(blend)).entries();
          const SpdMatrix fast = run_m(triple, a, b, c);
          ctx.record(1e-12 - (fast.entries() - expected).norm(),
                     [&] { return triple_inputs(a, b, c); });
          const SpdMatrix forced = run_m(triple, a, b, c, /*force=*/true);
          ctx.record(1e-8 - (forced.entries() - expected).norm(),
                     [&] { return triple_inputs(a, b, c); });
        }
      }));
}

void register_engine(std::vector<PropertyCheck>& reg) {
  reg.push_back(make_check(
      "engine.aggregate_monotone",
      "the p-weighted aggregate decreases along the iteration: "
      "min_eig(S_m - S_{m+1}) >= -1e-9 |S_0|_F",
      {"engine.aggregate_monotone"}, 36, [](Ctx& ctx) {
        const std::vector<MeanTriple> triples = {
            geometric_triple(0.5, 0.5, 0.5),
            validate_triple(make_mean(MeanKind::kGeometric, 1.0 / 3),
                            make_mean(MeanKind::kHarmonic, 0.5),
                            make_mean(MeanKind::kGeometric, 2.0 / 3)),
            validate_triple(make_mean(MeanKind::kArithmetic, 0.5),
                            make_mean(MeanKind::kHarmonic, 1.0 / 3),
                            make_mean(MeanKind::kGeometric, 0.25))};
        const Eigen::Index dims[] = {1, 2, 4, 8};
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple& triple = triples[static_cast<size_t>(t) % triples.size()];
          const Eigen::Index dim = dims[(static_cast<size_t>(t) / 3) % 4];
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          AlmConfig cfg;  // trace stride 1: every step is sampled
          const AlmOutcome out = alm_compute(triple, a, b, c, cfg);
          const double scale = aggregate3(triple.p, a, b, c).norm();
          ctx.record(out.s_monotone_violation + 1e-9 * scale,
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "engine.common_limit",
      "iterates meet at one point: final pairwise Thompson distance <= tol "
      "and quadratic-form gaps <= 10 tol on random probes",
      {"engine.common_limit"}, 30, [](Ctx& ctx) {
        const double tol = 1e-12;
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = sample_valid_triple(ctx.sampler, false);
          const Eigen::Index dim = ctx.sampler.uniform_int(2, 4);
          std::array<SpdMatrix, 3> cur = {moderate_spd(ctx.sampler, dim),
                                          moderate_spd(ctx.sampler, dim),
                                          moderate_spd(ctx.sampler, dim)};
          const ordered_json inputs = triple_inputs(cur[0], cur[1], cur[2]);
          // Independent loop over alm_step so the final iterates themselves
          // are visible (the engine only reports their aggregate).
          double dist = kInf;
          for (int m = 0; m < 10000 && dist > tol; ++m) {
            cur = alm_step(triple, cur[0], cur[1], cur[2]);
            dist = std::max({thompson(cur[0], cur[1]), thompson(cur[1], cur[2]),
                             thompson(cur[0], cur[2])});
          }
          ctx.record(tol - dist, [&] { return inputs; });
          double worst_gap = 0.0;
          for (int k = 0; k < 10; ++k) {
            const Eigen::VectorXd x = ctx.sampler.unit_vector(dim);
            worst_gap = std::max(
                worst_gap, std::abs(x.dot((cur[0].entries() - cur[1].entries()) * x)));
            worst_gap = std::max(
                worst_gap, std::abs(x.dot((cur[1].entries() - cur[2].entries()) * x)));
          }
          ctx.record(10.0 * tol - worst_gap, [&] { return inputs; });
        }
      }));

  reg.push_back(make_check(
      "order.sandwich",
      "the limit sits between the p-weighted harmonic and arithmetic "
      "combinations (slack 1e-9)",
      {"engine.sandwich"}, 50, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = sample_valid_triple(ctx.sampler);
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 5);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const SpdMatrix m = run_m(triple, a, b, c);
          const Eigen::MatrixXd upper = aggregate3(triple.p, a, b, c);
          const Eigen::MatrixXd blend = triple.p(0) * inverse_of(a).entries() +
                                        triple.p(1) * inverse_of(b).entries() +
                                        triple.p(2) * inverse_of(c).entries();
          const Eigen::MatrixXd lower = inverse_of(SpdMatrix(blend)).entries();
          const double lower_margin = min_eigenvalue(m.entries() - lower);
          const double upper_margin = min_eigenvalue(upper - m.entries());
          ctx.record(std::min(lower_margin, upper_margin) + 1e-9,
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "order.mean_order",
      "pointwise larger representing functions give a Loewner-larger limit "
      "(harmonic <= geometric <= arithmetic at fixed weight, slack 1e-9)",
      {"engine.mean_order"}, 40, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          std::array<double, 3> r = {ctx.sampler.uniform(0.2, 0.8),
                                     ctx.sampler.uniform(0.2, 0.8),
                                     ctx.sampler.uniform(0.2, 0.8)};
          // Lower triple: harmonic/geometric mix. Upper: upgrade each slot,
          // at most one all the way to arithmetic.
          std::array<MeanKind, 3> lo_kind;
          std::array<MeanKind, 3> hi_kind;
          const int arith_slot = ctx.sampler.uniform_int(0, 2);
          for (int k = 0; k < 3; ++k) {
            const bool geo = ctx.sampler.uniform_int(0, 1) == 1;
            lo_kind[static_cast<size_t>(k)] = geo ? MeanKind::kGeometric : MeanKind::kHarmonic;
            hi_kind[static_cast<size_t>(k)] =
                (k == arith_slot) ? MeanKind::kArithmetic : MeanKind::kGeometric;
          }
          const MeanTriple lo =
              validate_triple(make_mean(lo_kind[0], r[0]), make_mean(lo_kind[1], r[1]),
                              make_mean(lo_kind[2], r[2]));
          const MeanTriple hi =
              validate_triple(make_mean(hi_kind[0], r[0]), make_mean(hi_kind[1], r[1]),
                              make_mean(hi_kind[2], r[2]));
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 5);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const SpdMatrix m_lo = run_m(lo, a, b, c);
          const SpdMatrix m_hi = run_m(hi, a, b, c);
          ctx.record(min_eigenvalue(m_hi.entries() - m_lo.entries()) + 1e-9,
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "engine.scalar_strict_concavity",
      "scalar equality with the affine bound forces equal arguments: off the "
      "diagonal the gap p.(a,b,c) - M(a,b,c) stays above 1e-10",
      {"engine.scalar_strict_concavity"}, 0, [](Ctx& ctx) {
        const MeanTriple triple =
            validate_triple(make_mean(MeanKind::kGeometric, 0.5),
                            make_mean(MeanKind::kHarmonic, 0.5),
                            make_mean(MeanKind::kGeometric, 0.5));
        const double grid[] = {0.5, 1.0, 2.0, 4.0};
        for (double a : grid) {
          for (double b : grid) {
            for (double c : grid) {
              const bool off_diagonal =
                  std::abs(a - b) > 1e-6 || std::abs(b - c) > 1e-6;
              if (!off_diagonal) continue;
              const Eigen::VectorXd va = Eigen::VectorXd::Constant(1, a);
              const Eigen::VectorXd vb = Eigen::VectorXd::Constant(1, b);
              const Eigen::VectorXd vc = Eigen::VectorXd::Constant(1, c);
              const double m = run_m(triple, SpdMatrix::diagonal(va),
                                     SpdMatrix::diagonal(vb), SpdMatrix::diagonal(vc))
                                   .entries()(0, 0);
              const double chord =
                  triple.p(0) * a + triple.p(1) * b + triple.p(2) * c;
              ctx.record(chord - m - 1e-10, [&] {
                ordered_json j;
                j["scalars"] = {a, b, c};
                return j;
              });
            }
          }
        }
      }));

  reg.push_back(make_check(
      "engine.ladder_descends",
      "on singular inputs the shrinking-shift ladder produces a "
      "Loewner-decreasing chain of limits (slack 1e-9)",
      {"engine.ladder_descends"}, 20, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = sample_valid_triple(ctx.sampler, false);
          const Eigen::Index dim = ctx.sampler.uniform_int(2, 4);
          const SpdMatrix a = ctx.sampler.psd_singular(dim, dim - 1, 0.5, 4.0);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          AlmConfig cfg;
          cfg.trace_every = cfg.max_iter;
          // A resolvable ladder: the last rung still conditions the inputs
          // at ~4e6, so the distance floor (~dim * eps * condition) stays a
          // decade under the stopping threshold, and the rung-to-rung drops
          // (~0.9 * shift) stay decades above it.
          cfg.eps_shift = 1e-3;
          cfg.tol = 1e-8;
          const AlmOutcome out = alm_compute(triple, a, b, c, cfg);
          ctx.expect(!out.ladder.empty(), [&] { return triple_inputs(a, b, c); });
          double worst = kInf;
          for (size_t j = 1; j < out.ladder.size(); ++j) {
            worst = std::min(worst, out.ladder[j].drop_min_eig);
          }
          if (out.ladder.size() > 1) {
            ctx.record(worst + 1e-9, [&] { return triple_inputs(a, b, c); });
          }
        }
      }));

  reg.push_back(make_check(
      "engine.joint_homogeneity",
      "scaling the inputs by (alpha,beta,gamma) scales the all-geometric "
      "limit by the p-weighted power product (within 1e-8)",
      {}, 50, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = geometric_triple(ctx.sampler.uniform(0.15, 0.85),
                                                     ctx.sampler.uniform(0.15, 0.85),
                                                     ctx.sampler.uniform(0.15, 0.85));
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 4);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const double alpha = ctx.sampler.log_uniform(0.1, 10.0);
          const double beta = ctx.sampler.log_uniform(0.1, 10.0);
          const double gamma = ctx.sampler.log_uniform(0.1, 10.0);
          const SpdMatrix scaled = run_m(triple, SpdMatrix(alpha * a.entries()),
                                         SpdMatrix(beta * b.entries()),
                                         SpdMatrix(gamma * c.entries()));
          const double factor = std::pow(alpha, triple.p(0)) *
                                std::pow(beta, triple.p(1)) *
                                std::pow(gamma, triple.p(2));
          const Eigen::MatrixXd expected = factor * run_m(triple, a, b, c).entries();
          ctx.record(1e-8 - (scaled.entries() - expected).norm(),
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "engine.weight_estimate",
      "central differences at the all-ones point recover the weight vector: "
      "exact for affine means, within 1e-5 for recursion-built means",
      {}, 0, [](Ctx& ctx) {
        Eigen::VectorXd w(3);
        w << 0.25, 0.25, 0.5;
        const Eigen::VectorXd est_affine = estimate_weight_vector(arithmetic_multimean(w));
        ctx.record(1e-8 - (est_affine - w).lpNorm<Eigen::Infinity>());

        const MultiMean uniform_geo = build_alm_multimean(geometric_triple(0.5, 0.5, 0.5));
        const Eigen::VectorXd est_geo = estimate_weight_vector(uniform_geo);
        ctx.record(1e-5 - (est_geo - Eigen::VectorXd::Constant(3, 1.0 / 3))
                              .lpNorm<Eigen::Infinity>());

        const MeanTriple mixed = geometric_triple(0.5, 1.0 / 3, 0.25);
        const Eigen::VectorXd est_mixed =
            estimate_weight_vector(build_alm_multimean(mixed));
        ctx.record(1e-5 - (est_mixed - mixed.p).lpNorm<Eigen::Infinity>());
      }));

  reg.push_back(make_check(
      "tower.four_variable",
      "four copies of the uniform geometric three-variable mean drive a "
      "4-operator recursion to uniform weights; on commuting scalars "
      "(1,2,3,4) the limit is 24^(1/4) within 1e-6",
      {}, 0, [](Ctx& ctx) {
        const MultiMean component = build_alm_multimean(geometric_triple(0.5, 0.5, 0.5));
        const std::vector<MultiMean> family(4, component);
        std::vector<SpdMatrix> ops;
        for (double v : {1.0, 2.0, 3.0, 4.0}) {
          ops.push_back(SpdMatrix::diagonal(Eigen::VectorXd::Constant(1, v)));
        }
        AlmConfig cfg;
        cfg.tol = 1e-10;
        cfg.trace_every = cfg.max_iter;
        const AlmOutcome out = alm_compute_n(family, ops, cfg);
        ctx.record(1e-12 - (out.p - Eigen::VectorXd::Constant(4, 0.25))
                               .lpNorm<Eigen::Infinity>());
        const double expected = std::pow(24.0, 0.25);
        ctx.record(1e-6 - std::abs(out.limit.entries()(0, 0) - expected));
        const Eigen::VectorXd est =
            estimate_weight_vector(build_tower_multimean(family));
        ctx.record(1e-6 - (est - Eigen::VectorXd::Constant(4, 0.25))
                              .lpNorm<Eigen::Infinity>());
      }));
}

void register_metrics(std::vector<PropertyCheck>& reg) {
  reg.push_back(make_check(
      "metric.exp_gauge",
      "exp of the Thompson distance equals the two-sided gauge within 1e-12 "
      "relative",
      {"metric.exp_gauge"}, 100, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 6);
          const SpdMatrix a = wide_spd(ctx.sampler, dim);
          const SpdMatrix b = wide_spd(ctx.sampler, dim);
          const double lhs = std::exp(thompson(a, b));
          const double rhs = gauge_R(a, b);
          ctx.record(1e-12 * rhs - std::abs(lhs - rhs), [&] {
            ordered_json j;
            j["A"] = matrix_to_json(a.entries());
            j["B"] = matrix_to_json(b.entries());
            return j;
          });
        }
      }));

  reg.push_back(make_check(
      "metric.congruence_invariance",
      "congruence by invertible symmetric S preserves the Thompson distance "
      "within 1e-10",
      {"metric.congruence_invariance"}, 60, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 6);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const Eigen::MatrixXd s = ctx.sampler.symmetric_invertible(dim);
          const double before = thompson(a, b);
          const double after = thompson(congruence(s, a), congruence(s, b));
          ctx.record(1e-10 - std::abs(before - after), [&] {
            ordered_json j;
            j["A"] = matrix_to_json(a.entries());
            j["B"] = matrix_to_json(b.entries());
            j["S"] = matrix_to_json(s);
            return j;
          });
        }
      }));

  reg.push_back(make_check(
      "metric.scaling",
      "d(lambda A, lambda B) = d(A,B) and d(A, lambda A) = |log lambda| "
      "within 1e-11",
      {"metric.scaling"}, 60, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 6);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const double lambda = ctx.sampler.log_uniform(0.05, 20.0);
          const double err1 = std::abs(thompson(SpdMatrix(lambda * a.entries()),
                                                SpdMatrix(lambda * b.entries())) -
                                       thompson(a, b));
          const double err2 = std::abs(thompson(a, SpdMatrix(lambda * a.entries())) -
                                       std::abs(std::log(lambda)));
          ctx.record(1e-11 - std::max(err1, err2), [&] {
            ordered_json j;
            j["A"] = matrix_to_json(a.entries());
            j["lambda"] = lambda;
            return j;
          });
        }
      }));

  reg.push_back(make_check(
      "metric.thompson_axioms",
      "the distance is symmetric, zero on the diagonal, and satisfies the "
      "triangle inequality (slack 1e-10)",
      {}, 100, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 6);
          const SpdMatrix a = wide_spd(ctx.sampler, dim);
          const SpdMatrix b = wide_spd(ctx.sampler, dim);
          const SpdMatrix c = wide_spd(ctx.sampler, dim);
          const double sym = std::abs(thompson(a, b) - thompson(b, a));
          const double self = thompson(a, a);
          const double tri = thompson(a, c) - thompson(a, b) - thompson(b, c);
          // Distances of condition-1e4 pairs at dim 6 carry up to ~1e-10 of
          // whitening noise per evaluation; slacks sit an order above that
          // floor and far below any real violation.
          ctx.record(std::min({1e-9 - sym, 1e-9 - self, 3e-9 - tri}), [&] {
            return triple_inputs(a, b, c);
          });
        }
      }));

  reg.push_back(make_check(
      "metric.lipschitz",
      "the all-geometric limit is 1-Lipschitz in each input under the "
      "p-weighted Thompson sum (slack 1e-8)",
      {"metric.lipschitz"}, 80, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = geometric_triple(ctx.sampler.uniform(0.15, 0.85),
                                                     ctx.sampler.uniform(0.15, 0.85),
                                                     ctx.sampler.uniform(0.15, 0.85));
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 4);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const SpdMatrix a2 = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b2 = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c2 = moderate_spd(ctx.sampler, dim);
          const double lhs = thompson(run_m(triple, a, b, c), run_m(triple, a2, b2, c2));
          const double rhs = triple.p(0) * thompson(a, a2) +
                             triple.p(1) * thompson(b, b2) +
                             triple.p(2) * thompson(c, c2);
          ctx.record(rhs + 1e-8 - lhs, [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "metric.triple_distance",
      "limits of two weight triples sharing p are within K times the "
      "p-weighted pairwise distances, K the largest weight gap (slack 1e-8)",
      {"metric.triple_distance"}, 80, [](Ctx& ctx) {
        const MeanTriple first = geometric_triple(0.5, 0.5, 0.5);
        const MeanTriple second = geometric_triple(2.0 / 3, 2.0 / 3, 2.0 / 3);
        const double k_factor = 1.0 / 6.0;  // max |r - r'|
        for (long t = 0; t < ctx.trials; ++t) {
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 4);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const double lhs =
              thompson(run_m(first, a, b, c), run_m(second, a, b, c));
          const double rhs = k_factor * (first.p(0) * thompson(b, c) +
                                         first.p(1) * thompson(c, a) +
                                         first.p(2) * thompson(a, b));
          ctx.record(rhs + 1e-8 - lhs, [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "metric.norm_perturbation",
      "with every input in the band [m, M], moving all inputs by at most "
      "delta moves the limit by at most (M/m) delta (slack 1e-9)",
      {"engine.norm_perturbation"}, 60, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = sample_valid_triple(ctx.sampler);
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 4);
          const SpdMatrix a = ctx.sampler.spd(dim, 0.7, 3.0);
          const SpdMatrix b = ctx.sampler.spd(dim, 0.7, 3.0);
          const SpdMatrix c = ctx.sampler.spd(dim, 0.7, 3.0);
          const auto nudge = [&ctx, dim](const SpdMatrix& x) {
            const Eigen::MatrixXd g = ctx.sampler.gaussian_matrix(dim, dim);
            const Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
            return SpdMatrix(x.entries() +
                             (0.1 / std::max(op2_norm(sym), 1e-12)) * sym);
          };
          const SpdMatrix a2 = nudge(a);
          const SpdMatrix b2 = nudge(b);
          const SpdMatrix c2 = nudge(c);
          double lo = kInf, hi = 0.0;
          for (const SpdMatrix* x : {&a, &b, &c, &a2, &b2, &c2}) {
            lo = std::min(lo, x->lambda_min());
            hi = std::max(hi, x->lambda_max());
          }
          const double dev = std::max({op2_norm(a.entries() - a2.entries()),
                                       op2_norm(b.entries() - b2.entries()),
                                       op2_norm(c.entries() - c2.entries())});
          const double lhs = op2_norm(run_m(triple, a, b, c).entries() -
                                      run_m(triple, a2, b2, c2).entries());
          ctx.record((hi / lo) * dev + 1e-9 - lhs,
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "metric.geodesic_gauge",
      "gauge along the geometric path is controlled by the endpoint gauge: "
      "R(X #_r Y, X #_s Y) <= R(X,Y)^|r-s|",
      {}, 100, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 5);
          const SpdMatrix x = moderate_spd(ctx.sampler, dim);
          const SpdMatrix y = moderate_spd(ctx.sampler, dim);
          double r = ctx.sampler.uniform(0.0, 1.0);
          double s = ctx.sampler.uniform(0.0, 1.0);
          if (t % 5 == 0) r = s;           // equality edge
          if (t % 7 == 0) { r = 1.0; s = 0.0; }  // endpoint swap edge
          ctx.expect(geodesic_gauge_bound_check(x, y, r, s), [&] {
            ordered_json j;
            j["X"] = matrix_to_json(x.entries());
            j["Y"] = matrix_to_json(y.entries());
            j["r"] = r;
            j["s"] = s;
            return j;
          });
        }
      }));
}

void register_adjoint(std::vector<PropertyCheck>& reg) {
  reg.push_back(make_check(
      "adjoint.matrix_adjoint",
      "running the adjoint triple on inverted inputs inverts the limit "
      "(within 1e-7 Frobenius), exercised on arithmetic/harmonic swaps",
      {}, 60, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          // Geometric slots are self-adjoint, so one arithmetic/harmonic
          // slot keeps both the triple and its adjoint valid.
          const int slot = ctx.sampler.uniform_int(0, 2);
          std::array<TwoVarMean, 3> sigma = {
              make_mean(MeanKind::kGeometric, ctx.sampler.uniform(0.15, 0.85)),
              make_mean(MeanKind::kGeometric, ctx.sampler.uniform(0.15, 0.85)),
              make_mean(MeanKind::kGeometric, ctx.sampler.uniform(0.15, 0.85))};
          sigma[static_cast<size_t>(slot)] =
              make_mean(ctx.sampler.uniform_int(0, 1) == 0 ? MeanKind::kArithmetic
                                                           : MeanKind::kHarmonic,
                        ctx.sampler.uniform(0.2, 0.8));
          const MeanTriple triple = validate_triple(sigma[0], sigma[1], sigma[2]);
          const MeanTriple adjoint = validate_triple(adjoint_mean(sigma[0]),
                                                     adjoint_mean(sigma[1]),
                                                     adjoint_mean(sigma[2]));
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 4);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const SpdMatrix via_adjoint = inverse_of(
              run_m(adjoint, inverse_of(a), inverse_of(b), inverse_of(c)));
          const SpdMatrix direct = run_m(triple, a, b, c);
          ctx.record(1e-7 - (via_adjoint.entries() - direct.entries()).norm(),
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "adjoint.self_adjoint_geometric",
      "the all-geometric mean is self-adjoint: inverting inputs inverts the "
      "limit within 1e-7",
      {}, 60, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = geometric_triple(ctx.sampler.uniform(0.15, 0.85),
                                                     ctx.sampler.uniform(0.15, 0.85),
                                                     ctx.sampler.uniform(0.15, 0.85));
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 6);
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const SpdMatrix via_inv =
              inverse_of(run_m(triple, inverse_of(a), inverse_of(b), inverse_of(c)));
          const SpdMatrix direct = run_m(triple, a, b, c);
          ctx.record(1e-7 - (via_inv.entries() - direct.entries()).norm(),
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "adjoint.scaling_chain",
      "replay of the ordering reduction: scale two inputs until the triple "
      "is Loewner-descending, confirm self-adjointness there, on the "
      "homogeneity link, and on the original inputs (1e-7 Thompson)",
      {"verify.self_adjoint_chain"}, 30, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = geometric_triple(0.5, 0.5, 0.5);
          const Eigen::Index dim = ctx.sampler.uniform_int(2, 4);
          const SpdMatrix x = moderate_spd(ctx.sampler, dim);
          const SpdMatrix y = moderate_spd(ctx.sampler, dim);
          const SpdMatrix z = moderate_spd(ctx.sampler, dim);
          const double mu = 1.01 * z.lambda_max() / y.lambda_min();
          const double lambda = 1.01 * mu * y.lambda_max() / x.lambda_min();
          const SpdMatrix a(lambda * x.entries());
          const SpdMatrix b(mu * y.entries());
          const SpdMatrix& c = z;
          ctx.expect(loewner_leq(b, a, 1e-10) && loewner_leq(c, b, 1e-10));
          const auto self_adjoint_gap = [&triple](const SpdMatrix& u, const SpdMatrix& v,
                                                  const SpdMatrix& w) {
            const SpdMatrix direct = run_m(triple, u, v, w);
            const SpdMatrix via_inv =
                inverse_of(run_m(triple, inverse_of(u), inverse_of(v), inverse_of(w)));
            return thompson(direct, via_inv);
          };
          // Ordered case first (the strong-convergence regime).
          ctx.record(1e-7 - self_adjoint_gap(a, b, c));
          // Homogeneity transfers the ordered identity back to (X,Y,Z).
          const double factor = std::pow(lambda, triple.p(0)) * std::pow(mu, triple.p(1));
          const double link = thompson(run_m(triple, a, b, c),
                                       SpdMatrix(factor * run_m(triple, x, y, z).entries()));
          ctx.record(1e-7 - link);
          ctx.record(1e-7 - self_adjoint_gap(x, y, z),
                     [&] { return triple_inputs(x, y, z); });
        }
      }));

  reg.push_back(make_check(
      "continuity.upward_geometric",
      "along inputs increasing to a limit the all-geometric mean increases "
      "to the limit value (finite ladder)",
      {}, 20, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const MeanTriple triple = geometric_triple(0.5, 0.5, 0.5);
          const Eigen::Index dim = ctx.sampler.uniform_int(2, 4);
          // lambda_min >= 0.25, so a -0.1 shift keeps everything definite.
          const SpdMatrix a = moderate_spd(ctx.sampler, dim);
          const SpdMatrix b = moderate_spd(ctx.sampler, dim);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const SpdMatrix at_limit = run_m(triple, a, b, c);
          double delta = 0.1;
          double worst = kInf;
          SpdMatrix prev = run_m(triple, a.shifted(-delta), b.shifted(-delta),
                                 c.shifted(-delta));
          SpdMatrix last = prev;
          for (int k = 1; k < 6; ++k) {
            delta *= 0.5;
            const SpdMatrix cur = run_m(triple, a.shifted(-delta), b.shifted(-delta),
                                        c.shifted(-delta));
            worst = std::min(worst, min_eigenvalue(cur.entries() - prev.entries()));
            worst = std::min(worst, min_eigenvalue(at_limit.entries() - cur.entries()));
            prev = cur;
            last = cur;
          }
          const double tail = (at_limit.entries() - last.entries()).norm();
          ctx.record(std::min(worst + 1e-9, 50.0 * delta - tail),
                     [&] { return triple_inputs(a, b, c); });
        }
      }));
}

void register_ordered_and_counterexamples(std::vector<PropertyCheck>& reg) {
  reg.push_back(make_check(
      "ordered.interleaving",
      "for a symmetric mean on descending inputs the even iterates stay "
      "descending and the odd iterates ascending (slack 1e-9), with the "
      "lead iterate converging strongly to the limit",
      {}, 40, [](Ctx& ctx) {
        const MeanKind kinds[] = {MeanKind::kGeometric, MeanKind::kHarmonic,
                                  MeanKind::kArithmetic};
        for (long t = 0; t < ctx.trials; ++t) {
          const MultiMean mean = two_var_multimean(
              make_mean(kinds[static_cast<size_t>(t) % 3], 0.5));
          const Eigen::Index dim = ctx.sampler.uniform_int(2, 4);
          const SpdMatrix c = moderate_spd(ctx.sampler, dim);
          const Eigen::MatrixXd g1 = 0.5 * ctx.sampler.gaussian_matrix(dim, dim);
          const Eigen::MatrixXd g2 = 0.5 * ctx.sampler.gaussian_matrix(dim, dim);
          const SpdMatrix b(c.entries() + g1 * g1.transpose());
          const SpdMatrix a(b.entries() + g2 * g2.transpose());
          const OrderedRunResult run = ordered_convergence_run(mean, {a, b, c});
          ctx.record(run.worst_pattern_violation + 1e-9,
                     [&] { return triple_inputs(a, b, c); });
          ctx.record(1e-8 - run.residuals.back(),
                     [&] { return triple_inputs(a, b, c); });
        }
      }));

  reg.push_back(make_check(
      "counterexample.not_dominated",
      "the 6-family of two-argument averages (zero weights) is rejected as "
      "not affinely dominated, by the profile builder and by the engine",
      {}, 0, [](Ctx& ctx) {
        const std::vector<MultiMean> family = non_dominated_family();
        bool profile_rejected = false;
        try {
          gamma_from_multimeans(family_rows(family));
        } catch (const NotAffinelyDominated&) {
          profile_rejected = true;
        }
        ctx.expect(profile_rejected);
        bool engine_rejected = false;
        std::vector<SpdMatrix> ops;
        for (int v = 1; v <= 6; ++v) {
          ops.push_back(SpdMatrix::diagonal(Eigen::VectorXd::Constant(1, v)));
        }
        try {
          alm_compute_n(family, ops, AlmConfig{});
        } catch (const NotAffinelyDominated&) {
          engine_rejected = true;
        }
        ctx.expect(engine_rejected);
      }));

  reg.push_back(make_check(
      "counterexample.nonprimitive6",
      "the cyclic 3x3 profile and the block-cyclic 6x6 profile of the "
      "rejected family are flagged non-primitive",
      {}, 0, [](Ctx& ctx) {
        Eigen::MatrixXd cyclic3(3, 3);
        cyclic3 << 0, 1, 0, 0, 0, 1, 1, 0, 0;
        ctx.expect(!check_primitive(cyclic3).primitive,
                   [&] { return matrix_to_json(cyclic3); });
        const Eigen::MatrixXd gamma6 =
            gamma_matrix_from_rows(family_rows(non_dominated_family()));
        const PrimitivityReport report = check_primitive(gamma6);
        ctx.expect(!report.primitive, [&] { return matrix_to_json(gamma6); });
        ctx.expect(report.unit_modulus_count == 3,
                   [&] { return matrix_to_json(gamma6); });
      }));

  reg.push_back(make_check(
      "counterexample.unsafe_floor",
      "forcing the rejected family through the recursion leaves a pairwise "
      "distance floor: iterates cycle instead of converging",
      {}, 0, [](Ctx& ctx) {
        const std::vector<MultiMean> family = non_dominated_family();
        std::vector<SpdMatrix> ops;
        for (int v = 1; v <= 6; ++v) {
          ops.push_back(SpdMatrix::diagonal(Eigen::VectorXd::Constant(1, v)));
        }
        AlmConfig cfg;
        cfg.max_iter = 200;
        cfg.unsafe_allow = true;
        const AlmOutcome out = alm_compute_n(family, ops, cfg);
        ctx.expect(out.stop_reason == StopReason::kMaxIter);
        ctx.expect(!out.primitive);
        double floor = kInf;
        for (const TraceEntry& entry : out.trace) {
          if (entry.iteration >= 3) floor = std::min(floor, entry.max_thompson);
        }
        ctx.record(floor - 0.2);
        ctx.record(out.final_max_thompson - 0.2);
      }));
}

void register_io_and_meta(std::vector<PropertyCheck>& reg) {
  reg.push_back(make_check(
      "io.determinism",
      "the same job document rendered twice through the engine and writer "
      "gives byte-identical output",
      {"io.determinism"}, 0, [](Ctx& ctx) {
        const char* job_text = R"({
          "means": [{"kind": "geometric", "r": 0.5},
                    {"kind": "harmonic", "r": 0.25},
                    {"kind": "geometric", "r": 0.75}],
          "matrices": [[[2.0, 0.5], [0.5, 1.0]],
                       [[3.0, -0.25], [-0.25, 2.0]],
                       [[1.5, 0.0], [0.0, 4.0]]]
        })";
        const auto render = [&]() {
          const MeanJob job = parse_mean_job(ordered_json::parse(job_text));
          const AlmOutcome out = alm_compute(*job.triple, job.operators[0],
                                             job.operators[1], job.operators[2],
                                             job.config);
          return dump_json(outcome_to_json(out, true));
        };
        const std::string first = render();
        const std::string second = render();
        ctx.expect(first == second);
        ctx.expect(!first.empty() && first.find("\"limit\"") != std::string::npos);
      }));

  reg.push_back(make_check(
      "io.roundtrip",
      "matrices survive the write-parse cycle bit for bit (17 significant "
      "digits)",
      {"io.roundtrip"}, 100, [](Ctx& ctx) {
        for (long t = 0; t < ctx.trials; ++t) {
          const Eigen::Index dim = ctx.sampler.uniform_int(1, 8);
          const SpdMatrix a = wide_spd(ctx.sampler, dim);
          const std::string text = dump_json(matrix_to_json(a.entries()));
          const Eigen::MatrixXd back = matrix_from_json(ordered_json::parse(text));
          ctx.expect(back == a.entries(), [&] { return matrix_to_json(a.entries()); });
        }
      }));

  reg.push_back(make_check(
      "registry.coverage",
      "every module invariant in the manifest is certified by exactly one "
      "registered check",
      {"verify.registry_coverage"}, 0, [](Ctx& ctx) {
        const auto& manifest = invariant_manifest();
        const auto& registry = check_registry();
        for (const auto& [id, description] : manifest) {
          int count = 0;
          for (const PropertyCheck& check : registry) {
            count += static_cast<int>(std::count(check.covers.begin(),
                                                 check.covers.end(), id));
          }
          ctx.expect(count == 1, [&, id = id, description = description, count] {
            ordered_json j;
            j["invariant"] = id;
            j["description"] = description;
            j["covering_checks"] = count;
            return j;
          });
        }
        // No check may claim an id outside the manifest.
        for (const PropertyCheck& check : registry) {
          for (const std::string& id : check.covers) {
            const bool known =
                std::any_of(manifest.begin(), manifest.end(),
                            [&id](const auto& entry) { return entry.first == id; });
            ctx.expect(known, [&] {
              ordered_json j;
              j["check"] = check.name;
              j["unknown_invariant"] = id;
              return j;
            });
          }
        }
      }));
}

std::vector<PropertyCheck> build_registry() {
  std::vector<PropertyCheck> reg;
  register_linalg(reg);
  register_mean2(reg);
  register_stochastic(reg);
  register_axioms(reg);
  register_oracles(reg);
  register_engine(reg);
  register_metrics(reg);
  register_adjoint(reg);
  register_ordered_and_counterexamples(reg);
  register_io_and_meta(reg);
  return reg;
}

}  // namespace

bool VerifyReport::all_passed() const {
  for (const CheckResult& r : results) {
    if (r.failures > 0) return false;
  }
  return true;
}

const std::vector<PropertyCheck>& check_registry() {
  static const std::vector<PropertyCheck> registry = build_registry();
  return registry;
}

const std::vector<std::pair<std::string, std::string>>& invariant_manifest() {
  static const std::vector<std::pair<std::string, std::string>> manifest = {
      {"linalg.spectral_identity_map",
       "reassembling the eigensystem with the identity function is the identity map"},
      {"linalg.sqrt_squares_back", "the spectral square root squares back to the input"},
      {"linalg.congruence_roundtrip", "congruence by S and S^-1 round-trips"},
      {"linalg.loewner_partial_order",
       "the semidefinite order is a partial order on diagonal fixtures"},
      {"mean2.monotone", "two-variable means are monotone in both arguments"},
      {"mean2.transformer", "two-variable means satisfy the transformer inequality"},
      {"mean2.strict_concavity_scalar",
       "non-arithmetic means are strictly below the affine chord off-diagonal"},
      {"mean2.adjoint_involution", "the adjoint is an involution"},
      {"mean2.transpose_involution", "the transpose is an involution"},
      {"mean2.commuting_diagonal",
       "matrix means reduce to scalar means on a shared eigenbasis"},
      {"stochastic.gamma_power_converges",
       "primitive profile powers converge to the rank-one stationary stack"},
      {"stochastic.closed_form_grid",
       "closed-form stationary weights match the linear solve on a weight grid"},
      {"stochastic.cyclic_relabel",
       "cyclic weight relabeling cyclically permutes the stationary vector"},
      {"stochastic.noncauchy", "non-primitive profile powers are not Cauchy"},
      {"engine.aggregate_monotone", "the p-weighted aggregate decreases along the run"},
      {"engine.common_limit", "iterates converge to a common limit"},
      {"engine.axiom_monotone", "the induced mean is monotone"},
      {"engine.axiom_transformer", "the induced mean satisfies the transformer inequality"},
      {"engine.axiom_congruence", "the induced mean is congruence invariant"},
      {"engine.axiom_normalization", "the induced mean fixes the identity"},
      {"engine.sandwich",
       "the limit sits between the weighted harmonic and arithmetic means"},
      {"engine.mean_order", "pointwise larger means give Loewner-larger limits"},
      {"engine.norm_perturbation",
       "input perturbations move the limit by at most the band ratio"},
      {"engine.scalar_strict_concavity",
       "scalar equality with the affine bound forces equal arguments"},
      {"engine.ladder_descends", "shift-ladder limits decrease with the shift"},
      {"metric.exp_gauge", "exp of the distance equals the two-sided gauge"},
      {"metric.congruence_invariance", "the distance is congruence invariant"},
      {"metric.scaling", "the distance is scale invariant and log-scales on rays"},
      {"metric.lipschitz", "the limit is p-weighted 1-Lipschitz in the inputs"},
      {"metric.triple_distance",
       "same-p weight triples give limits within the K-weighted distance bound"},
      {"io.determinism", "identical jobs render byte-identical output"},
      {"io.roundtrip", "emitted matrices parse back bit for bit"},
      {"verify.self_adjoint_chain",
       "the ordering-reduction replay of self-adjointness holds numerically"},
      {"verify.registry_coverage", "every manifest invariant has exactly one check"},
  };
  return manifest;
}

std::vector<std::string> match_checks(const std::string& pattern) {
  std::vector<std::string> names;
  for (const PropertyCheck& check : check_registry()) {
    if (glob_match(pattern, check.name)) names.push_back(check.name);
  }
  if (names.empty()) {
    throw UnknownCheck("no registered check matches \"" + pattern + "\"");
  }
  return names;
}

VerifyReport run_checks(const std::string& pattern, std::uint64_t seed,
                        std::optional<long> trials) {
  const std::vector<std::string> selected = match_checks(pattern);
  VerifyReport report;
  report.seed = seed;
  for (const PropertyCheck& check : check_registry()) {
    if (std::find(selected.begin(), selected.end(), check.name) == selected.end()) {
      continue;
    }
    CheckResult result = check.run(seed ^ fnv1a(check.name), trials.value_or(0));
    result.law = check.law;
    report.results.push_back(std::move(result));
  }
  return report;
}

ordered_json report_to_json(const VerifyReport& report) {
  ordered_json doc;
  doc["seed"] = report.seed;
  doc["passed"] = report.all_passed();
  ordered_json checks = ordered_json::array();
  for (const CheckResult& r : report.results) {
    ordered_json entry;
    entry["name"] = r.name;
    entry["law"] = r.law;
    entry["trials"] = r.trials;
    entry["failures"] = r.failures;
    entry["worst_margin"] = r.worst_margin;
    if (!r.witness.empty()) {
      entry["witness"] = ordered_json::parse(r.witness);
    }
    checks.push_back(std::move(entry));
  }
  doc["checks"] = std::move(checks);
  return doc;
}

}  // namespace almeans
