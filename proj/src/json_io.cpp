// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include "almeans/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace almeans {
namespace {

void append_escaped(std::string& out, const std::string& s) {
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

void dump_value(std::string& out, const ordered_json& v, int indent, int depth) {
  const bool pretty = indent >= 0;
  const auto newline = [&](int d) {
    if (pretty) {
      out.push_back('\n');
      out.append(static_cast<size_t>(indent) * d, ' ');
    }
  };
  switch (v.type()) {
    case nlohmann::detail::value_t::null:
      out += "null";
      break;
    case nlohmann::detail::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      break;
    case nlohmann::detail::value_t::number_integer:
      out += std::to_string(v.get<long long>());
      break;
    case nlohmann::detail::value_t::number_unsigned:
      out += std::to_string(v.get<unsigned long long>());
      break;
    case nlohmann::detail::value_t::number_float:
      out += format_double(v.get<double>());
      break;
    case nlohmann::detail::value_t::string:
      append_escaped(out, v.get<std::string>());
      break;
    case nlohmann::detail::value_t::array: {
      out.push_back('[');
      bool first = true;
      for (const auto& item : v) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        dump_value(out, item, indent, depth + 1);
      }
      if (!v.empty()) newline(depth);
      out.push_back(']');
      break;
    }
    case nlohmann::detail::value_t::object: {
      out.push_back('{');
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        append_escaped(out, it.key());
        out.push_back(':');
        if (pretty) out.push_back(' ');
        dump_value(out, it.value(), indent, depth + 1);
      }
      if (!v.empty()) newline(depth);
      out.push_back('}');
      break;
    }
    default:
      throw JobParseError("cannot serialize a binary JSON value");
  }
}

const ordered_json& require_key(const ordered_json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw JobParseError(std::string("missing key \"") + key + "\"");
  }
  return *it;
}

double number_at(const ordered_json& v, const char* what) {
  if (!v.is_number()) {
    throw JobParseError(std::string(what) + " must be a number");
  }
  return v.get<double>();
}

bool is_two_var_descriptor(const ordered_json& d) {
  return d.is_object() && d.contains("kind") && !d.contains("weights") &&
         !d.contains("alm_triple");
}

MeanTriple triple_from_descriptors(const ordered_json& list) {
  if (!list.is_array() || list.size() != 3) {
    throw JobParseError("\"alm_triple\" needs exactly three mean descriptors");
  }
  return validate_triple(mean_from_json(list[0]), mean_from_json(list[1]),
                         mean_from_json(list[2]));
}

MultiMean multimean_from_descriptor(const ordered_json& d) {
  if (!d.is_object()) {
    throw JobParseError("mean descriptor must be an object");
  }
  if (d.contains("alm_triple")) {
    return build_alm_multimean(triple_from_descriptors(d["alm_triple"]));
  }
  if (d.contains("weights")) {
    const std::string kind = require_key(d, "kind").get<std::string>();
    if (kind != "arithmetic") {
      throw JobParseError("only arithmetic multimeans take a \"weights\" list");
    }
    const ordered_json& w = d["weights"];
    if (!w.is_array() || w.size() < 2) {
      throw JobParseError("\"weights\" must be an array of at least 2 numbers");
    }
    Eigen::VectorXd weights(w.size());
    for (size_t i = 0; i < w.size(); ++i) {
      weights(static_cast<Eigen::Index>(i)) = number_at(w[i], "weight");
    }
    return arithmetic_multimean(weights);
  }
  if (d.contains("kind")) {
    return two_var_multimean(mean_from_json(d));
  }
  throw JobParseError("mean descriptor needs \"kind\", \"weights\", or \"alm_triple\"");
}

void apply_config(const ordered_json& doc, AlmConfig& config) {
  if (!doc.is_object()) {
    throw JobParseError("\"config\" must be an object");
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (key == "tol") {
      config.tol = number_at(it.value(), "tol");
    } else if (key == "max_iter") {
      config.max_iter = it.value().get<long>();
    } else if (key == "eps") {
      config.eps_shift = number_at(it.value(), "eps");
    } else if (key == "eps_ladder_factor") {
      config.eps_ladder_factor = number_at(it.value(), "eps_ladder_factor");
    } else if (key == "eps_ladder_length") {
      config.eps_ladder_length = it.value().get<int>();
    } else if (key == "trace_every") {
      config.trace_every = it.value().get<long>();
    } else if (key == "force_iterate") {
      config.force_iterate = it.value().get<bool>();
    } else if (key == "unsafe_allow") {
      config.unsafe_allow = it.value().get<bool>();
    } else {
      throw JobParseError("unknown config key \"" + key + "\"");
    }
  }
}

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

}  // namespace

std::string format_double(double value) {
  if (!std::isfinite(value)) {
    // JSON has no literal for these; the library never emits them on
    // healthy paths.
    return value > 0 ? "1e999" : (value < 0 ? "-1e999" : "null");
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string dump_json(const ordered_json& doc, int indent) {
  std::string out;
  dump_value(out, doc, indent, 0);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw JobParseError("cannot read file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const ordered_json& doc) {
  if (doc.is_array()) {
    if (doc.empty()) throw JobParseError("matrix array is empty");
    if (doc[0].is_number()) {
      // Flat list of numbers: a single row (scalar operands write [x]).
      Eigen::MatrixXd m(1, doc.size());
      for (size_t j = 0; j < doc.size(); ++j) {
        m(0, static_cast<Eigen::Index>(j)) = number_at(doc[j], "matrix entry");
      }
      return m;
    }
    const size_t rows = doc.size();
    if (!doc[0].is_array()) throw JobParseError("matrix must be an array of rows");
    const size_t cols = doc[0].size();
    if (cols == 0) throw JobParseError("matrix row is empty");
    Eigen::MatrixXd m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
      if (!doc[i].is_array() || doc[i].size() != cols) {
        throw JobParseError("matrix rows have inconsistent lengths");
      }
      for (size_t j = 0; j < cols; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            number_at(doc[i][j], "matrix entry");
      }
    }
    return m;
  }
  if (doc.is_object()) {
    const long dim = require_key(doc, "dim").get<long>();
    if (dim <= 0) throw JobParseError("matrix \"dim\" must be positive");
    const ordered_json& data = require_key(doc, "data");
    if (!data.is_array() || data.size() != static_cast<size_t>(dim) * dim) {
      throw JobParseError("matrix \"data\" must hold dim*dim entries");
    }
    Eigen::MatrixXd m(dim, dim);
    size_t k = 0;
    for (long i = 0; i < dim; ++i) {
      for (long j = 0; j < dim; ++j) {
        m(i, j) = number_at(data[k++], "matrix entry");
      }
    }
    return m;
  }
  throw JobParseError("matrix must be an array of rows or {\"dim\", \"data\"}");
}

Eigen::MatrixXd matrix_from_text(const std::string& text) {
  std::istringstream in(text);
  long dim = 0;
  if (!(in >> dim) || dim <= 0) {
    throw JobParseError("matrix text must start with a positive dimension");
  }
  Eigen::MatrixXd m(dim, dim);
  for (long i = 0; i < dim; ++i) {
    for (long j = 0; j < dim; ++j) {
      if (!(in >> m(i, j))) {
        throw JobParseError("matrix text ended after " + std::to_string(i * dim + j) +
                            " of " + std::to_string(dim * dim) + " entries");
      }
    }
  }
  return m;
}

Eigen::MatrixXd load_matrix_file(const std::string& path) {
  const std::string text = read_text_file(path);
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    if (c == '{' || c == '[') {
      try {
        return matrix_from_json(ordered_json::parse(text));
      } catch (const nlohmann::json::parse_error& e) {
        throw JobParseError(std::string("in ") + path + ": " + e.what());
      }
    }
    return matrix_from_text(text);
  }
  throw JobParseError("matrix file is empty: " + path);
}

ordered_json mean_to_json(const TwoVarMean& mean) {
  if (mean.kind() == MeanKind::kCustom) {
    throw Unsupported("custom means do not serialize (programmatic API only)");
  }
  ordered_json doc;
  doc["kind"] = mean_kind_name(mean.kind());
  doc["r"] = mean.weight();
  return doc;
}

TwoVarMean mean_from_json(const ordered_json& doc) {
  if (!doc.is_object()) {
    throw JobParseError("mean descriptor must be an object");
  }
  const std::string kind = require_key(doc, "kind").get<std::string>();
  if (kind == "left") return make_mean(MeanKind::kLeftTrivial, 0.0);
  if (kind == "right") return make_mean(MeanKind::kRightTrivial, 1.0);
  const double r = number_at(require_key(doc, "r"), "\"r\"");
  if (kind == "arithmetic") return make_mean(MeanKind::kArithmetic, r);
  if (kind == "geometric") return make_mean(MeanKind::kGeometric, r);
  if (kind == "harmonic") return make_mean(MeanKind::kHarmonic, r);
  throw JobParseError("unknown mean kind \"" + kind + "\"");
}

MeanJob parse_mean_job(const ordered_json& doc) {
  if (!doc.is_object()) {
    throw JobParseError("job must be a JSON object");
  }
  const ordered_json& means = require_key(doc, "means");
  const ordered_json& matrices = require_key(doc, "matrices");
  if (!means.is_array() || means.size() < 3) {
    throw JobParseError("\"means\" must list at least 3 descriptors");
  }
  if (!matrices.is_array() || matrices.size() != means.size()) {
    throw JobParseError("\"matrices\" must list exactly " + std::to_string(means.size()) +
                        " matrices (one per mean), got " + std::to_string(matrices.size()));
  }

  MeanJob job;
  if (doc.contains("config")) {
    apply_config(doc["config"], job.config);
  }
  for (const auto& m : matrices) {
    job.operators.emplace_back(matrix_from_json(m));
  }
  for (size_t i = 1; i < job.operators.size(); ++i) {
    if (job.operators[i].dim() != job.operators[0].dim()) {
      throw JobParseError("matrices must share one dimension: matrix " + std::to_string(i) +
                          " is " + std::to_string(job.operators[i].dim()) + "x" +
                          std::to_string(job.operators[i].dim()) + ", expected dim " +
                          std::to_string(job.operators[0].dim()));
    }
  }

  bool all_two_var = true;
  for (const auto& d : means) {
    if (!is_two_var_descriptor(d)) all_two_var = false;
  }
  if (all_two_var && means.size() == 3) {
    job.triple = validate_triple(mean_from_json(means[0]), mean_from_json(means[1]),
                                 mean_from_json(means[2]));
  } else {
    for (const auto& d : means) {
      job.means.push_back(multimean_from_descriptor(d));
    }
  }
  return job;
}

ordered_json outcome_to_json(const AlmOutcome& outcome, bool include_trace) {
  ordered_json doc;
  doc["limit"] = matrix_to_json(outcome.limit.entries());
  doc["p"] = vector_to_json(outcome.p);
  doc["iterations"] = outcome.iterations;
  doc["stop_reason"] = stop_reason_name(outcome.stop_reason);
  doc["spectral_gap"] = outcome.spectral_gap;
  doc["final_max_thompson"] = outcome.final_max_thompson;
  doc["s_monotone_violation"] = outcome.s_monotone_violation;
  doc["primitive"] = outcome.primitive;
  if (!outcome.ladder.empty()) {
    ordered_json ladder = ordered_json::array();
    for (const LadderRung& rung : outcome.ladder) {
      ordered_json entry;
      entry["eps"] = rung.eps;
      entry["iterations"] = rung.iterations;
      entry["drop_min_eig"] = rung.drop_min_eig;
      ladder.push_back(std::move(entry));
    }
    doc["ladder"] = std::move(ladder);
  }
  if (include_trace) {
    ordered_json trace = ordered_json::array();
    for (const TraceEntry& t : outcome.trace) {
      ordered_json entry;
      entry["iteration"] = t.iteration;
      entry["max_thompson"] = t.max_thompson;
      entry["aggregate_step_fro"] = t.aggregate_step_fro;
      entry["aggregate_drop_min_eig"] = t.aggregate_drop_min_eig;
      entry["probe_quadratic"] = t.probe_quadratic;
      trace.push_back(std::move(entry));
    }
    doc["trace"] = std::move(trace);
  }
  return doc;
}

ordered_json profile_to_json(const StochasticProfile& profile) {
  ordered_json doc;
  doc["gamma"] = matrix_to_json(profile.gamma);
  doc["p"] = vector_to_json(profile.p);
  doc["primitive"] = profile.primitive;
  doc["spectral_gap"] = profile.spectral_gap;
  return doc;
}

}  // namespace almeans
