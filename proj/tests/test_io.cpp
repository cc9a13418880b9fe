// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "doctest.h"

#include "almeans/json_io.hpp"

namespace {

using namespace almeans;

std::filesystem::path write_temp(const std::string& stem,
                                 const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / stem;
  std::ofstream out(path, std::ios::binary);
  out << contents;
  out.close();
  return path;
}

}  // namespace

TEST_CASE("doubles render with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(format_double(inf) == "1e999");
  CHECK(format_double(-inf) == "-1e999");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "null");
}

TEST_CASE("serializer is deterministic and order-preserving") {
  ordered_json doc;
  doc["b"] = 1.5;
  doc["a"] = ordered_json::array({1, 2});
  doc["s"] = "x\"y";
  CHECK(dump_json(doc) == "{\"b\":1.5,\"a\":[1,2],\"s\":\"x\\\"y\"}");
  CHECK(dump_json(doc, 2) ==
        "{\n  \"b\": 1.5,\n  \"a\": [\n    1,\n    2\n  ],\n  \"s\": \"x\\\"y\"\n}");
  CHECK(dump_json(ordered_json::object()) == "{}");
  CHECK(dump_json(ordered_json::array()) == "[]");
}

TEST_CASE("matrices round-trip bit for bit through JSON text") {
  Eigen::MatrixXd m(2, 2);
  m << 0.1, 1.0 / 3.0, 1.0 / 3.0, 3.14159265358979312;
  const std::string text = dump_json(matrix_to_json(m));
  const Eigen::MatrixXd back = matrix_from_json(ordered_json::parse(text));
  CHECK(back.rows() == 2);
  CHECK((back.array() == m.array()).all());
}

TEST_CASE("matrix documents come in three shapes") {
  const Eigen::MatrixXd nested =
      matrix_from_json(ordered_json::parse("[[2,1],[1,2]]"));
  CHECK(nested(0, 1) == 1.0);
  CHECK(nested.rows() == 2);

  // A flat list of numbers is a single row (handy for scalar jobs).
  const Eigen::MatrixXd flat = matrix_from_json(ordered_json::parse("[3]"));
  CHECK(flat.rows() == 1);
  CHECK(flat.cols() == 1);
  CHECK(flat(0, 0) == 3.0);

  const Eigen::MatrixXd packed = matrix_from_json(
      ordered_json::parse("{\"dim\":2,\"data\":[2,1,1,2]}"));
  CHECK(packed(1, 0) == 1.0);

  CHECK_THROWS_AS(matrix_from_json(ordered_json::parse("[]")), JobParseError);
  CHECK_THROWS_AS(matrix_from_json(ordered_json::parse("[[1,2],[3]]")),
                  JobParseError);
  CHECK_THROWS_AS(matrix_from_json(ordered_json::parse("[[\"x\"]]")),
                  JobParseError);
  CHECK_THROWS_AS(matrix_from_json(ordered_json::parse("{\"dim\":0,\"data\":[]}")),
                  JobParseError);
  CHECK_THROWS_AS(matrix_from_json(ordered_json::parse("{\"dim\":2,\"data\":[1,2,3]}")),
                  JobParseError);
  CHECK_THROWS_AS(matrix_from_json(ordered_json::parse("\"hi\"")), JobParseError);
}

TEST_CASE("whitespace-delimited matrix text") {
  const Eigen::MatrixXd eye = matrix_from_text("2 1 0 0 1");
  CHECK(eye.isIdentity(0.0));
  const Eigen::MatrixXd multi = matrix_from_text("2\n4 1\n1 3\n");
  CHECK(multi(0, 0) == 4.0);
  CHECK(multi(1, 0) == 1.0);
  CHECK_THROWS_AS(matrix_from_text("2 1 0 0"), JobParseError);
  CHECK_THROWS_AS(matrix_from_text("banana"), JobParseError);
  CHECK_THROWS_AS(matrix_from_text("0"), JobParseError);
}

TEST_CASE("matrix files are sniffed by their first character") {
  const auto json_path = write_temp("almeans_io_a.json", "[[1,2],[2,5]]");
  const auto text_path = write_temp("almeans_io_b.txt", "2\n1 2\n2 5\n");
  const Eigen::MatrixXd a = load_matrix_file(json_path.string());
  const Eigen::MatrixXd b = load_matrix_file(text_path.string());
  CHECK((a.array() == b.array()).all());
  std::filesystem::remove(json_path);
  std::filesystem::remove(text_path);
  CHECK_THROWS_AS(load_matrix_file("/nonexistent/almeans.json"), JobParseError);
}

TEST_CASE("two-variable means serialize and parse") {
  const TwoVarMean geo = make_mean(MeanKind::kGeometric, 0.25);
  const ordered_json doc = mean_to_json(geo);
  CHECK(dump_json(doc) == "{\"kind\":\"geometric\",\"r\":0.25}");
  const TwoVarMean back = mean_from_json(doc);
  CHECK(back.kind() == MeanKind::kGeometric);
  CHECK(back.weight() == 0.25);

  // The trivial kinds need no parameter on input.
  const TwoVarMean left = mean_from_json(ordered_json::parse("{\"kind\":\"left\"}"));
  CHECK(left.kind() == MeanKind::kLeftTrivial);
  const TwoVarMean right = mean_from_json(ordered_json::parse("{\"kind\":\"right\"}"));
  CHECK(right.weight() == 1.0);

  CHECK_THROWS_AS(mean_from_json(ordered_json::parse("{\"kind\":\"median\",\"r\":0.5}")),
                  JobParseError);
  CHECK_THROWS_AS(mean_from_json(ordered_json::parse("{\"r\":0.5}")), JobParseError);
  CHECK_THROWS_AS(mean_from_json(ordered_json::parse("[1,2]")), JobParseError);

  const TwoVarMean custom =
      make_custom_mean([](double t) { return std::sqrt(t); }, 0.5, false, "root");
  CHECK_THROWS_AS(mean_to_json(custom), Unsupported);
}

TEST_CASE("job documents parse into triples or families") {
  const char* triple_text = R"({
    "means": [{"kind": "geometric", "r": 0.5},
              {"kind": "geometric", "r": 0.5},
              {"kind": "geometric", "r": 0.5}],
    "matrices": [[[2]], [[3]], [[6]]],
    "config": {"tol": 1e-10, "max_iter": 500, "trace_every": 5,
               "force_iterate": true}
  })";
  const MeanJob job = parse_mean_job(ordered_json::parse(triple_text));
  CHECK(job.triple.has_value());
  CHECK(job.means.empty());
  CHECK(job.operators.size() == 3);
  CHECK(job.operators[0].dim() == 1);
  CHECK(job.config.tol == 1e-10);
  CHECK(job.config.max_iter == 500);
  CHECK(job.config.trace_every == 5);
  CHECK(job.config.force_iterate);
  CHECK(!job.config.unsafe_allow);
  CHECK(!job.config.eps_shift.has_value());

  const char* family_text = R"({
    "means": [{"kind": "arithmetic", "weights": [0.2, 0.3, 0.5]},
              {"kind": "arithmetic", "weights": [0.2, 0.3, 0.5]},
              {"kind": "arithmetic", "weights": [0.2, 0.3, 0.5]},
              {"alm_triple": [{"kind": "geometric", "r": 0.5},
                               {"kind": "geometric", "r": 0.5},
                               {"kind": "geometric", "r": 0.5}]}],
    "matrices": [[[1]], [[2]], [[3]], [[4]]]
  })";
  const MeanJob family = parse_mean_job(ordered_json::parse(family_text));
  CHECK(!family.triple.has_value());
  CHECK(family.means.size() == 4);
  CHECK(family.operators.size() == 4);

  const char* eps_text = R"({
    "means": [{"kind": "harmonic", "r": 0.5},
              {"kind": "harmonic", "r": 0.5},
              {"kind": "harmonic", "r": 0.5}],
    "matrices": [[[1]], [[1]], [[1]]],
    "config": {"eps": 1e-6, "eps_ladder_length": 2, "eps_ladder_factor": 0.5,
               "unsafe_allow": true}
  })";
  const MeanJob eps = parse_mean_job(ordered_json::parse(eps_text));
  CHECK(eps.config.eps_shift.has_value());
  CHECK(*eps.config.eps_shift == 1e-6);
  CHECK(eps.config.eps_ladder_length == 2);
  CHECK(eps.config.eps_ladder_factor == 0.5);
  CHECK(eps.config.unsafe_allow);
}

TEST_CASE("job documents reject structural mistakes") {
  CHECK_THROWS_AS(parse_mean_job(ordered_json::parse("[1]")), JobParseError);
  CHECK_THROWS_AS(parse_mean_job(ordered_json::parse("{\"matrices\":[]}")),
                  JobParseError);

  const char* short_means = R"({
    "means": [{"kind": "geometric", "r": 0.5}, {"kind": "geometric", "r": 0.5}],
    "matrices": [[[1]], [[1]]]
  })";
  CHECK_THROWS_AS(parse_mean_job(ordered_json::parse(short_means)), JobParseError);

  const char* count_mismatch = R"({
    "means": [{"kind": "geometric", "r": 0.5},
              {"kind": "geometric", "r": 0.5},
              {"kind": "geometric", "r": 0.5}],
    "matrices": [[[1]], [[1]]]
  })";
  CHECK_THROWS_AS(parse_mean_job(ordered_json::parse(count_mismatch)), JobParseError);

  const char* dim_mismatch = R"({
    "means": [{"kind": "geometric", "r": 0.5},
              {"kind": "geometric", "r": 0.5},
              {"kind": "geometric", "r": 0.5}],
    "matrices": [[[1]], [[1, 0], [0, 1]], [[1]]]
  })";
  CHECK_THROWS_AS(parse_mean_job(ordered_json::parse(dim_mismatch)), JobParseError);

  const char* bad_config = R"({
    "means": [{"kind": "geometric", "r": 0.5},
              {"kind": "geometric", "r": 0.5},
              {"kind": "geometric", "r": 0.5}],
    "matrices": [[[1]], [[1]], [[1]]],
    "config": {"tolerance": 1e-10}
  })";
  CHECK_THROWS_AS(parse_mean_job(ordered_json::parse(bad_config)), JobParseError);

  const char* bad_weights = R"({
    "means": [{"kind": "geometric", "weights": [0.5, 0.5]},
              {"kind": "arithmetic", "weights": [0.5, 0.5]},
              {"kind": "arithmetic", "weights": [0.5, 0.5]}],
    "matrices": [[[1]], [[1]], [[1]]]
  })";
  CHECK_THROWS_AS(parse_mean_job(ordered_json::parse(bad_weights)), JobParseError);
}

TEST_CASE("outcome documents have a fixed key layout") {
  const MeanTriple triple = validate_triple(make_mean(MeanKind::kGeometric, 0.5),
                                            make_mean(MeanKind::kGeometric, 0.5),
                                            make_mean(MeanKind::kGeometric, 0.5));
  const SpdMatrix a(Eigen::MatrixXd::Constant(1, 1, 2.0));
  const SpdMatrix b(Eigen::MatrixXd::Constant(1, 1, 3.0));
  const SpdMatrix c(Eigen::MatrixXd::Constant(1, 1, 6.0));
  const AlmOutcome outcome = alm_compute(triple, a, b, c);

  const std::string compact = dump_json(outcome_to_json(outcome, false));
  CHECK(compact.rfind("{\"limit\":", 0) == 0);
  CHECK(compact.find("\"p\":") != std::string::npos);
  CHECK(compact.find("\"stop_reason\":\"Converged\"") != std::string::npos);
  CHECK(compact.find("\"trace\"") == std::string::npos);
  // 17-digit mantissas appear in the payload.
  CHECK(compact.find("3.3019272488946") != std::string::npos);

  const std::string traced = dump_json(outcome_to_json(outcome, true));
  CHECK(traced.find("\"trace\":[") != std::string::npos);
  CHECK(traced.find("\"max_thompson\":") != std::string::npos);

  // Identical runs produce identical bytes.
  const AlmOutcome again = alm_compute(triple, a, b, c);
  CHECK(dump_json(outcome_to_json(again, true)) == traced);
}

TEST_CASE("stochastic profiles serialize") {
  const StochasticProfile profile = gamma_from_weights_3(0.5, 0.5, 0.5);
  const std::string text = dump_json(profile_to_json(profile));
  CHECK(text.rfind("{\"gamma\":", 0) == 0);
  CHECK(text.find("\"primitive\":true") != std::string::npos);
  CHECK(text.find("\"spectral_gap\":0.5") != std::string::npos);
}
