// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ALMEANS_JSON_IO_HPP_
#define ALMEANS_JSON_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "almeans/engine.hpp"
#include "almeans/stochastic.hpp"

namespace almeans {

// Insertion-ordered documents keep emitted key order fixed, which the
// byte-reproducibility promise needs.
using ordered_json = nlohmann::ordered_json;

// Fixed 17-significant-digit decimal rendering: round-trips any finite
// double exactly and is stable across runs.
std::string format_double(double value);

// Serializer whose number formatting is format_double (the library dump
// would use shortest-round-trip forms instead). indent < 0 is compact,
// otherwise pretty with that many spaces.
std::string dump_json(const ordered_json& doc, int indent = -1);

std::string read_text_file(const std::string& path);  // JobParseError on failure

ordered_json matrix_to_json(const Eigen::MatrixXd& m);
// Accepts [[row], [row], ...] or {"dim": n, "data": [n*n row-major]}.
Eigen::MatrixXd matrix_from_json(const ordered_json& doc);
// Whitespace-delimited: dimension n followed by n*n row-major entries.
Eigen::MatrixXd matrix_from_text(const std::string& text);
// Sniffs the format: '{' or '[' starts JSON, otherwise text.
Eigen::MatrixXd load_matrix_file(const std::string& path);

ordered_json mean_to_json(const TwoVarMean& mean);
// {"kind": "arithmetic"|"geometric"|"harmonic"|"left"|"right", "r": number}.
TwoVarMean mean_from_json(const ordered_json& doc);

// A parsed job: either a triple of two-variable means (the three-operator
// recursion) or a general multimean family, plus operators and config.
struct MeanJob {
  std::optional<MeanTriple> triple;
  std::vector<MultiMean> means;
  std::vector<SpdMatrix> operators;
  AlmConfig config;
};

// Job documents: {"means": [descriptor...], "matrices": [matrix...],
// "config": {...}}. A descriptor is a two-variable mean object, an
// {"kind": "arithmetic", "weights": [...]} multimean, or
// {"alm_triple": [three two-variable descriptors]}. Exactly three
// two-variable descriptors select the triple path.
MeanJob parse_mean_job(const ordered_json& doc);

ordered_json outcome_to_json(const AlmOutcome& outcome, bool include_trace);
ordered_json profile_to_json(const StochasticProfile& profile);

}  // namespace almeans

#endif  // ALMEANS_JSON_IO_HPP_
