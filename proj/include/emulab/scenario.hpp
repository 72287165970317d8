#pragma once

// Scenario files: a flat `key = value` format (TOML-compatible subset)
// with dotted keys namespaced structural.*, loss.*, union.*, shocks.*,
// run.*. Exactly one of the structural block and an explicit union.c must
// be present; when the block is given, c is derived from the reduced form.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <emulab/mc_engine.hpp>
#include <emulab/structural.hpp>

namespace emulab {

struct ScenarioError : std::runtime_error {
  ScenarioError(const std::string& file, int line_, const std::string& message);
  int line;  // 0 when the error is not tied to a single line
};

struct Scenario {
  std::optional<StructuralParams> structural;
  UnionScenario model;  // loss, resolved c, rule, sanction t, shocks
  std::uint64_t n_draws = 100000;
  std::uint64_t seed = 42;
  std::string digest;  // scenario_digest(model)
};

Scenario parse_scenario_file(const std::string& path);
Scenario parse_scenario_text(const std::string& text, const std::string& name);

}  // namespace emulab
