#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drkit/errors.hpp"
#include "drkit/solutions.hpp"

namespace drkit {

/// A run request. Unset optionals fall back to the scenario's defaults.
struct ScenarioConfig {
  std::string scenario;
  std::optional<Eigen::Index> dim;
  std::optional<Point> x0;
  std::optional<std::size_t> iters;
  std::optional<double> tol;
  std::uint64_t seed = 7;
  std::string out_trace;
  std::string out_summary;
  /// Scenario-specific parameters, validated against the scenario schema.
  std::map<std::string, std::string> params;
  /// Record wall time in the summary (makes it run-dependent).
  bool timing = false;
};

/// Raised for unknown scenarios, bad parameters and unwritable outputs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
  /// The mathematical setting the scenario instantiates.
  std::string anchor;
  std::vector<std::string> params;
};

std::vector<ScenarioInfo> list_scenarios();

struct CheckResult {
  std::string name;
  bool verdict = false;
  double worst_value = 0.0;
  std::optional<std::size_t> witness_index;
};

struct RunSummary {
  std::string scenario;
  std::size_t iters = 0;
  Point v_estimate;
  double final_step_norm = 0.0;
  Point shadow_limit;
  std::vector<CheckResult> checks;
  std::optional<double> wall_ms;

  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
};

struct ScenarioRun {
  RunSummary summary;
  DRTrace trace;
};

/// Builds the scenario, iterates and evaluates its checkers. No file I/O.
/// Throws ConfigError for invalid configurations.
ScenarioRun run_scenario(const ScenarioConfig& config);

/// run_scenario plus writing the trace CSV and summary JSON to the paths in
/// `config` (skipped when empty).
RunSummary run(const ScenarioConfig& config);

}  // namespace drkit
