// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "almeans/engine.hpp"
#include "almeans/json_io.hpp"
#include "almeans/log.hpp"
#include "almeans/stochastic.hpp"
#include "almeans/thompson.hpp"
#include "almeans/verify.hpp"

namespace {

using namespace almeans;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNonConverged = 2;

struct MeanFlags {
  bool trace = false;
  std::optional<double> tol;
  std::optional<long> max_iter;
  std::optional<double> eps;
  bool force_iterate = false;
  bool unsafe_allow = false;
  std::vector<std::string> matrix_files;
};

void apply_flags(AlmConfig& config, const MeanFlags& flags) {
  if (flags.tol) config.tol = *flags.tol;
  if (flags.max_iter) config.max_iter = *flags.max_iter;
  if (flags.eps) config.eps_shift = *flags.eps;
  if (flags.force_iterate) config.force_iterate = true;
  if (flags.unsafe_allow) config.unsafe_allow = true;
}

struct JobRun {
  int code = kExitOk;
  std::string output;   // rendered outcome JSON (may be empty on input errors)
  std::string message;  // human-readable error for stderr
};

JobRun execute_job(const std::string& path, const MeanFlags& flags) {
  JobRun run;
  try {
    ordered_json doc = ordered_json::parse(read_text_file(path));
    if (!flags.matrix_files.empty()) {
      // Escape hatch: matrices come from whitespace-delimited text (or
      // JSON) files instead of the job document.
      ordered_json mats = ordered_json::array();
      for (const std::string& file : flags.matrix_files) {
        mats.push_back(matrix_to_json(load_matrix_file(file)));
      }
      doc["matrices"] = std::move(mats);
    }
    MeanJob job = parse_mean_job(doc);
    apply_flags(job.config, flags);
    const AlmOutcome outcome =
        job.triple ? alm_compute(*job.triple, job.operators[0], job.operators[1],
                                 job.operators[2], job.config)
                   : alm_compute_n(job.means, job.operators, job.config);
    run.output = dump_json(outcome_to_json(outcome, flags.trace));
    if (outcome.stop_reason == StopReason::kMaxIter) {
      run.code = kExitNonConverged;
      run.message = path + ": did not converge (final Thompson distance " +
                    format_double(outcome.final_max_thompson) + ")";
    }
  } catch (const NonConverged& e) {
    run.output = dump_json(outcome_to_json(e.outcome(), flags.trace));
    run.message = path + ": " + e.what();
    run.code = kExitNonConverged;
  } catch (const nlohmann::json::parse_error& e) {
    run.message = path + ": " + e.what();  // carries the byte position
    run.code = kExitInputError;
  } catch (const Error& e) {
    run.message = path + ": " + e.what();
    run.code = kExitInputError;
  }
  return run;
}

int run_mean(const std::string& job_path, const std::string& jobs_dir,
             const MeanFlags& flags) {
  if (jobs_dir.empty()) {
    const JobRun run = execute_job(job_path, flags);
    if (!run.output.empty()) std::cout << run.output << "\n";
    if (!run.message.empty()) std::cerr << "almeans: " << run.message << "\n";
    return run.code;
  }

  // Batch mode: every .json file in the directory, one engine per file,
  // results reported in sorted filename order regardless of completion
  // order.
  std::vector<std::string> files;
  try {
    for (const auto& entry : std::filesystem::directory_iterator(jobs_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path().string());
      }
    }
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "almeans: " << e.what() << "\n";
    return kExitInputError;
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "almeans: no .json job files in " << jobs_dir << "\n";
    return kExitInputError;
  }
  std::vector<std::future<JobRun>> pending;
  pending.reserve(files.size());
  for (const std::string& file : files) {
    pending.push_back(std::async(std::launch::async, execute_job, file, flags));
  }
  int worst = kExitOk;
  for (size_t i = 0; i < files.size(); ++i) {
    const JobRun run = pending[i].get();
    ordered_json wrapper;
    wrapper["file"] = files[i];
    wrapper["exit_code"] = run.code;
    if (!run.output.empty()) wrapper["result"] = ordered_json::parse(run.output);
    if (!run.message.empty()) wrapper["error"] = run.message;
    std::cout << dump_json(wrapper) << "\n";
    // Input errors dominate non-convergence in the aggregate status.
    if (run.code == kExitInputError || worst == kExitInputError) {
      worst = kExitInputError;
    } else {
      worst = std::max(worst, run.code);
    }
  }
  return worst;
}

int run_perron(const std::vector<double>& weight_flags, const std::string& job_path) {
  try {
    StochasticProfile profile;
    if (!weight_flags.empty()) {
      if (weight_flags.size() != 3) {
        throw ParameterError("--weight must be given exactly three times, got " +
                             std::to_string(weight_flags.size()));
      }
      profile = gamma_from_weights_3(weight_flags[0], weight_flags[1], weight_flags[2]);
    } else if (!job_path.empty()) {
      const ordered_json doc = ordered_json::parse(read_text_file(job_path));
      if (doc.contains("weights")) {
        const auto& w = doc.at("weights");
        if (!w.is_array() || w.size() != 3) {
          throw JobParseError("\"weights\" must hold three numbers");
        }
        profile = gamma_from_weights_3(w.at(0).get<double>(), w.at(1).get<double>(),
                                       w.at(2).get<double>());
      } else if (doc.contains("rows")) {
        std::vector<Eigen::VectorXd> rows;
        for (const auto& row : doc.at("rows")) {
          Eigen::VectorXd r(static_cast<Eigen::Index>(row.size()));
          for (Eigen::Index i = 0; i < r.size(); ++i) {
            r(i) = row.at(static_cast<size_t>(i)).get<double>();
          }
          rows.push_back(std::move(r));
        }
        profile = gamma_from_multimeans(rows);
      } else {
        throw JobParseError("perron job needs \"weights\" or \"rows\"");
      }
    } else {
      throw ParameterError("perron needs --weight r1 --weight r2 --weight r3 or --job <path>");
    }
    std::cout << dump_json(profile_to_json(profile)) << "\n";
    return kExitOk;
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "almeans: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    std::cerr << "almeans: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_distance(const std::string& first, const std::string& second) {
  try {
    const SpdMatrix a{load_matrix_file(first)};
    const SpdMatrix b{load_matrix_file(second)};
    ordered_json doc;
    doc["thompson"] = thompson(a, b);
    doc["gauge_R"] = gauge_R(a, b);
    std::cout << dump_json(doc) << "\n";
    return kExitOk;
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "almeans: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    std::cerr << "almeans: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_verify(const std::string& filter, std::uint64_t seed,
               std::optional<long> trials, const std::string& report_path) {
  try {
    const VerifyReport report = run_checks(filter, seed, trials);
    for (const CheckResult& r : report.results) {
      std::cout << (r.failures == 0 ? "[PASS] " : "[FAIL] ") << r.name
                << " trials=" << r.trials << " failures=" << r.failures
                << " worst_margin=" << format_double(r.worst_margin) << "\n";
      if (!r.witness.empty()) std::cout << "  witness: " << r.witness << "\n";
    }
    std::cout << (report.all_passed() ? "all checks passed" : "CHECK FAILURES")
              << " (" << report.results.size() << " checks, seed=" << seed << ")\n";
    if (!report_path.empty()) {
      std::ofstream out(report_path);
      if (!out) {
        std::cerr << "almeans: cannot write report to " << report_path << "\n";
        return kExitInputError;
      }
      out << dump_json(report_to_json(report), 2) << "\n";
    }
    return report.all_passed() ? kExitOk : kExitInputError;
  } catch (const Error& e) {
    std::cerr << "almeans: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator means of positive-definite matrices via the "
               "weighted cyclic-mean recursion"};
  app.require_subcommand(1);

  // mean ---------------------------------------------------------------
  auto* mean_cmd = app.add_subcommand(
      "mean", "Run the recursion for a job document and emit the limit");
  std::string job_path;
  std::string jobs_dir;
  MeanFlags flags;
  double tol_value = 0.0;
  long max_iter_value = 0;
  double eps_value = 0.0;
  auto* job_opt = mean_cmd->add_option("--job", job_path, "Job JSON document");
  auto* jobs_opt =
      mean_cmd->add_option("--jobs", jobs_dir, "Directory of job documents (batch)");
  job_opt->excludes(jobs_opt);
  mean_cmd->add_flag("--trace", flags.trace, "Include the iteration trace in the output");
  auto* tol_opt =
      mean_cmd->add_option("--tol", tol_value, "Thompson-distance stopping threshold");
  auto* max_iter_opt = mean_cmd->add_option("--max-iter", max_iter_value, "Iteration cap");
  auto* eps_opt = mean_cmd->add_option(
      "--eps", eps_value, "Base shift for semidefinite inputs (ladder start)");
  mean_cmd->add_flag("--force-iterate", flags.force_iterate,
                     "Iterate even when a closed form applies");
  mean_cmd->add_flag("--unsafe-allow", flags.unsafe_allow,
                     "Run hypothesis-violating families with NonConverged semantics");
  mean_cmd->add_option("--matrix-file", flags.matrix_files,
                       "Read operators from matrix files (text or JSON) instead of "
                       "the job document; repeat once per operator");

  // perron -------------------------------------------------------------
  auto* perron_cmd = app.add_subcommand(
      "perron", "Emit the weight-cycling matrix and its stationary vector");
  std::vector<double> weight_flags;
  std::string perron_job;
  perron_cmd->add_option("--weight", weight_flags,
                         "Mean weight r in (0,1); give three for the 3-operator form");
  perron_cmd->add_option("--job", perron_job,
                         "JSON with {\"weights\": [r1,r2,r3]} or {\"rows\": [[...], ...]}");

  // distance -----------------------------------------------------------
  auto* distance_cmd =
      app.add_subcommand("distance", "Thompson distance and gauge of two matrices");
  std::string dist_a;
  std::string dist_b;
  distance_cmd->add_option("first", dist_a, "First matrix file")->required();
  distance_cmd->add_option("second", dist_b, "Second matrix file")->required();

  // verify -------------------------------------------------------------
  auto* verify_cmd =
      app.add_subcommand("verify", "Run the registered property checks");
  std::string filter = "*";
  std::uint64_t seed = 0;
  long trials_value = 0;
  std::string report_path;
  verify_cmd->add_option("--filter", filter, "Glob over check names");
  verify_cmd->add_option("--seed", seed, "Base seed (per-check streams derive from it)");
  auto* trials_opt = verify_cmd->add_option(
      "--trials", trials_value, "Override the trial count of sampled checks");
  verify_cmd->add_option("--report", report_path, "Write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  if (mean_cmd->parsed()) {
    if (job_path.empty() && jobs_dir.empty()) {
      std::cerr << "almeans: mean needs --job <path> or --jobs <dir>\n";
      return kExitInputError;
    }
    if (*tol_opt) flags.tol = tol_value;
    if (*max_iter_opt) flags.max_iter = max_iter_value;
    if (*eps_opt) flags.eps = eps_value;
    return run_mean(job_path, jobs_dir, flags);
  }
  if (perron_cmd->parsed()) {
    return run_perron(weight_flags, perron_job);
  }
  if (distance_cmd->parsed()) {
    return run_distance(dist_a, dist_b);
  }
  std::optional<long> trials;
  if (*trials_opt) trials = trials_value;
  return run_verify(filter, seed, trials, report_path);
}
