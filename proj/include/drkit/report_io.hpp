#pragma once

#include <fstream>
#include <map>
#include <string>

#include "drkit/identity_sweep.hpp"
#include "drkit/scenarios.hpp"

namespace drkit {

/// Output file opened up front so an unwritable path fails before any work.
/// An empty path discards everything written.
class OutputFile {
 public:
  explicit OutputFile(const std::string& path);
  void write(const std::string& text);

 private:
  std::string path_;
  std::ofstream out_;
};

/// n, g*, s*, ds*, bs*, step_norm, v* with 17 significant digits.
std::string trace_csv(const DRTrace& trace);

std::string summary_json(const RunSummary& summary);
std::string residual_report_json(const ResidualReport& report);
std::string sweep_json(const IdentitySweepResult& result);

/// "1,2.5,-3" -> Point. Throws ConfigError on malformed input.
Point parse_point(const std::string& text);

/// Flat `key = value` lines; blank lines and '#' comments are ignored.
std::map<std::string, std::string> parse_config(const std::string& text);
std::map<std::string, std::string> load_config_file(const std::string& path);

/// Applies key/value settings on top of `base`. Keys other than scenario,
/// dim, x0, iters, tol, seed, out_trace and out_summary become scenario
/// parameters.
ScenarioConfig apply_settings(ScenarioConfig base,
                              const std::map<std::string, std::string>& kv);

}  // namespace drkit
