#include "drkit/report_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace drkit {

namespace {

using nlohmann::ordered_json;

void put_double(std::string& out, double x) {
  char buf[32];
  const auto r =
      std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  out.append(buf, r.ptr);
}

void put_point(std::string& out, const Point& p) {
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    out += ',';
    put_double(out, p(i));
  }
}

ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

ordered_json point(const Point& p) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(number(p(i)));
  return a;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_integer(const std::string& key, const std::string& text) {
  T v{};
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size())
    throw ConfigError(key + " must be a nonnegative integer, got '" + text + "'");
  return v;
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size())
    throw ConfigError(key + " must be a number, got '" + text + "'");
  return v;
}

}  // namespace

OutputFile::OutputFile(const std::string& path) : path_(path) {
  if (path_.empty()) return;
  out_.open(path_, std::ios::binary | std::ios::trunc);
  if (!out_) throw ConfigError("cannot open '" + path_ + "' for writing");
}

void OutputFile::write(const std::string& text) {
  if (path_.empty()) return;
  out_ << text;
  out_.flush();
  if (!out_) throw ConfigError("write to '" + path_ + "' failed");
}

std::string trace_csv(const DRTrace& trace) {
  const Eigen::Index d = trace.problem.dim();
  std::string out = "n";
  for (const char* tag : {"g", "s", "ds", "bs"})
    for (Eigen::Index i = 0; i < d; ++i) out += "," + std::string(tag) + std::to_string(i);
  out += ",step_norm";
  for (Eigen::Index i = 0; i < d; ++i) out += ",v" + std::to_string(i);
  out += '\n';

  for (const auto& r : trace.records) {
    out += std::to_string(r.n);
    put_point(out, r.governing);
    put_point(out, r.shadow);
    put_point(out, r.dual_shadow);
    put_point(out, r.b_shadow);
    out += ',';
    put_double(out, r.step.norm());
    put_point(out, r.step);
    out += '\n';
  }
  return out;
}

std::string summary_json(const RunSummary& s) {
  ordered_json j;
  j["scenario"] = s.scenario;
  j["iters"] = s.iters;
  j["v_estimate"] = point(s.v_estimate);
  j["final_step_norm"] = number(s.final_step_norm);
  j["shadow_limit"] = point(s.shadow_limit);
  ordered_json checks = ordered_json::object();
  for (const auto& c : s.checks) {
    ordered_json e;
    e["verdict"] = c.verdict;
    e["worst_value"] = number(c.worst_value);
    e["witness_index"] =
        c.witness_index ? ordered_json(*c.witness_index) : ordered_json(nullptr);
    checks[c.name] = e;
  }
  j["checks"] = checks;
  j["wall_ms"] = s.wall_ms ? number(*s.wall_ms) : ordered_json(nullptr);
  return j.dump(2) + "\n";
}

namespace {

ordered_json report_object(const ResidualReport& r) {
  ordered_json j;
  ordered_json res = ordered_json::object();
  for (const auto& [k, v] : r.residuals) res[k] = number(v);
  ordered_json sl = ordered_json::object();
  for (const auto& [k, v] : r.slacks) sl[k] = number(v);
  j["residuals"] = res;
  j["slacks"] = sl;
  j["max_residual"] = number(r.max_residual());
  j["min_slack"] = number(r.min_slack());
  return j;
}

}  // namespace

std::string residual_report_json(const ResidualReport& report) {
  return report_object(report).dump(2) + "\n";
}

std::string sweep_json(const IdentitySweepResult& result) {
  ordered_json j;
  j["seed"] = result.seed;
  j["samples"] = result.samples;
  j["residual_tolerance"] = kIdentityTol;
  j["slack_tolerance"] = kSlackTol;
  j["max_residual"] = number(result.max_residual);
  j["min_slack"] = number(result.min_slack);
  j["pass"] = result.pass;
  ordered_json pairs = ordered_json::array();
  for (const auto& p : result.pairs) {
    ordered_json e = report_object(p.worst);
    e["dim"] = p.dim;
    e["a"] = p.a_label;
    e["b"] = p.b_label;
    pairs.push_back(e);
  }
  j["pairs"] = pairs;
  return j.dump(2) + "\n";
}

Point parse_point(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) vals.push_back(parse_real("x0", trim(item)));
  if (vals.empty()) throw ConfigError("x0 is empty");
  Point p(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i)
    p(static_cast<Eigen::Index>(i)) = vals[i];
  return p;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ScenarioConfig apply_settings(ScenarioConfig c,
                              const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "scenario")
      c.scenario = value;
    else if (key == "dim")
      c.dim = parse_integer<Eigen::Index>(key, value);
    else if (key == "x0")
      c.x0 = parse_point(value);
    else if (key == "iters")
      c.iters = parse_integer<std::size_t>(key, value);
    else if (key == "tol")
      c.tol = parse_real(key, value);
    else if (key == "seed")
      c.seed = parse_integer<std::uint64_t>(key, value);
    else if (key == "out_trace")
      c.out_trace = value;
    else if (key == "out_summary")
      c.out_summary = value;
    else
      c.params[key] = value;
  }
  return c;
}

}  // namespace drkit
