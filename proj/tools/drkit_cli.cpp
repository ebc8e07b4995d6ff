#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drkit/identity_sweep.hpp"
#include "drkit/report_io.hpp"
#include "drkit/scenarios.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerdictFailure = 1;
constexpr int kConfigError = 2;

int list() {
  for (const auto& s : drkit::list_scenarios()) {
    std::cout << s.name << "\n  " << s.description << "\n  setting: " << s.anchor
              << "\n";
    if (!s.params.empty()) {
      std::cout << "  params:";
      for (const auto& p : s.params) std::cout << ' ' << p;
      std::cout << "\n";
    }
  }
  return kOk;
}

int identities(std::uint64_t seed, int samples, bool corrupt,
               const std::string& out_path) {
  drkit::OutputFile out(out_path);
  drkit::SweepOptions opts;
  opts.seed = seed;
  opts.samples = samples;
  opts.corrupt_first_operator = corrupt;
  const drkit::IdentitySweepResult r = drkit::check_identities(opts);
  out.write(drkit::sweep_json(r));
  std::printf("%s identities: %zu operator pairs, %d samples each, max residual "
              "%.3e (tol %.0e), min slack %.3e (tol %.0e)\n",
              r.pass ? "PASS" : "FAIL", r.pairs.size(), r.samples,
              r.max_residual, drkit::kIdentityTol, r.min_slack,
              drkit::kSlackTol);
  return r.pass ? kOk : kVerdictFailure;
}

int run_one(const drkit::ScenarioConfig& cfg) {
  const drkit::RunSummary s = drkit::run(cfg);
  std::printf("%s: %zu iterations, final step norm %.6e\n", s.scenario.c_str(),
              s.iters, s.final_step_norm);
  for (const auto& c : s.checks)
    std::printf("  %s %-36s worst %.6e\n", c.verdict ? "PASS" : "FAIL",
                c.name.c_str(), c.worst_value);
  return s.all_pass() ? kOk : kVerdictFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Douglas-Rachford splitting experiments"};

  std::string config_path;
  std::optional<std::string> scenario, x0, out_trace, out_summary;
  std::optional<long long> dim;
  std::optional<std::size_t> iters;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> params;
  bool do_list = false, do_identities = false, timing = false, corrupt = false;
  int samples = 200;

  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--scenario", scenario, "scenario name (see --list)");
  app.add_option("--dim", dim, "dimension");
  app.add_option("--x0", x0, "starting point, comma separated");
  app.add_option("--iters", iters, "maximum number of iterations");
  app.add_option("--tol", tol, "stop when the step norm drops below this");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--out-trace", out_trace, "trace CSV path");
  app.add_option("--out-summary", out_summary,
                 "summary JSON path (identity report with --check-identities)");
  app.add_option("--param", params, "scenario parameter key=value")
      ->allow_extra_args(false);
  app.add_flag("--list", do_list, "list scenarios");
  app.add_flag("--check-identities", do_identities,
               "evaluate every identity over every library operator pair");
  app.add_option("--samples", samples, "random points per operator pair")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "record wall time in the summary");
  app.add_flag("--negate-first-resolvent", corrupt,
               "fault injection for --check-identities")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (do_list) return list();

    drkit::ScenarioConfig cfg;
    if (!config_path.empty())
      cfg = drkit::apply_settings(cfg, drkit::load_config_file(config_path));

    std::map<std::string, std::string> overrides;
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        throw drkit::ConfigError("--param expects key=value, got '" + kv + "'");
      overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (scenario) overrides["scenario"] = *scenario;
    if (x0) overrides["x0"] = *x0;
    if (out_trace) overrides["out_trace"] = *out_trace;
    if (out_summary) overrides["out_summary"] = *out_summary;
    cfg = drkit::apply_settings(cfg, overrides);
    if (dim) {
      if (*dim < 1) throw drkit::ConfigError("invalid dimension");
      cfg.dim = *dim;
    }
    if (iters) cfg.iters = *iters;
    if (tol) cfg.tol = *tol;
    if (seed) cfg.seed = *seed;
    cfg.timing = timing;

    if (do_identities)
      return identities(cfg.seed, samples, corrupt, cfg.out_summary);
    if (cfg.scenario.empty())
      throw drkit::ConfigError("no scenario given (use --scenario or --list)");
    return run_one(cfg);
  } catch (const drkit::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const drkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerdictFailure;
  }
}
