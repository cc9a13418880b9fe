// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ALMEANS_VERIFY_HPP_
#define ALMEANS_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "almeans/json_io.hpp"

namespace almeans {

struct CheckResult {
  std::string name;
  std::string law;  // one-line statement of the property under test
  long trials = 0;
  long failures = 0;
  // min over trials of (slack - observed excess); negative means a failure.
  double worst_margin = 0.0;
  // Compact JSON of the first failing inputs (replayable through the CLI
  // matrix format); empty when the check passed.
  std::string witness;
};

// A named, seeded property check. `covers` lists the invariant ids from
// invariant_manifest() this check certifies; the registry meta-check
// demands every manifest id be covered exactly once. default_trials = 0
// marks a fixed-shape check (grids, counterexamples) that ignores the
// trial-count override.
struct PropertyCheck {
  std::string name;
  std::string law;
  std::vector<std::string> covers;
  long default_trials = 0;
  std::function<CheckResult(std::uint64_t seed, long trials)> run;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> results;
  bool all_passed() const;
};

// All registered checks, built once. Order is fixed (registration order),
// so reports are reproducible.
const std::vector<PropertyCheck>& check_registry();

// The frozen list of module invariants the registry must cover: pairs of
// (invariant id, short description).
const std::vector<std::pair<std::string, std::string>>& invariant_manifest();

// Names matching a glob pattern ('*' and '?'); UnknownCheck when nothing
// matches.
std::vector<std::string> match_checks(const std::string& pattern);

// Runs every check matching the pattern. Each check draws from its own
// stream seeded with (seed XOR fnv1a(name)), so results do not depend on
// selection or execution order. trials overrides the per-check default
// where the check is trial-shaped.
VerifyReport run_checks(const std::string& pattern, std::uint64_t seed,
                        std::optional<long> trials = std::nullopt);

ordered_json report_to_json(const VerifyReport& report);

}  // namespace almeans

#endif  // ALMEANS_VERIFY_HPP_
