#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chiralwalk/cli.hpp"
#include "chiralwalk/error.hpp"

namespace chiralwalk::cli {

namespace {

using nlohmann::json;

enum class Kind { Int, Real, Text, Flag, RealList };

struct Setting {
  const char* key;
  Kind kind;
  const char* help;
  std::function<void(RunConfig&, const json&)> apply;
};

double as_real(const json& v) { return v.get<double>(); }
int as_int(const json& v) { return v.get<int>(); }

const std::vector<Setting>& settings() {
  static const std::vector<Setting> table{
      {"topology", Kind::Text, "chain | khalique | y | y-ring | tree",
       [](RunConfig& c, const json& v) { c.topology = v.get<std::string>(); }},
      {"n", Kind::Int, "sites per chain", [](RunConfig& c, const json& v) { c.n_sites = as_int(v); }},
      {"theta", Kind::Real, "junction phase (radians)",
       [](RunConfig& c, const json& v) { c.theta = as_real(v); }},
      {"theta_pi", Kind::Real, "junction phase in units of pi",
       [](RunConfig& c, const json& v) { c.theta = as_real(v) * std::numbers::pi; }},
      {"depth", Kind::Int, "tree depth", [](RunConfig& c, const json& v) { c.depth = as_int(v); }},
      {"path", Kind::Text, "tree target as L/R choices",
       [](RunConfig& c, const json& v) { c.path = v.get<std::string>(); }},
      {"packet", Kind::Text, "gaussian | square",
       [](RunConfig& c, const json& v) { c.packet = v.get<std::string>(); }},
      {"n0", Kind::Real, "packet centre", [](RunConfig& c, const json& v) { c.n0 = as_real(v); }},
      {"sigma", Kind::Real, "Gaussian width", [](RunConfig& c, const json& v) { c.sigma = as_real(v); }},
      {"support_lo", Kind::Int, "square packet first site",
       [](RunConfig& c, const json& v) { c.support_lo = as_int(v); }},
      {"support_hi", Kind::Int, "square packet last site",
       [](RunConfig& c, const json& v) { c.support_hi = as_int(v); }},
      {"k0", Kind::Real, "packet momentum (radians)",
       [](RunConfig& c, const json& v) { c.k0 = as_real(v); }},
      {"k0_pi", Kind::Real, "packet momentum in units of pi",
       [](RunConfig& c, const json& v) { c.k0 = as_real(v) * std::numbers::pi; }},
      {"chain", Kind::Int, "chain the packet starts on",
       [](RunConfig& c, const json& v) { c.chain = as_int(v); }},
      {"t_max", Kind::Real, "last sample time", [](RunConfig& c, const json& v) { c.t_max = as_real(v); }},
      {"dt", Kind::Real, "sample spacing", [](RunConfig& c, const json& v) { c.dt = as_real(v); }},
      {"snapshot", Kind::RealList, "evolve: snapshot times",
       [](RunConfig& c, const json& v) { c.snapshots = v.get<std::vector<double>>(); }},
      {"snapshot_out", Kind::Text, "evolve: snapshot CSV path",
       [](RunConfig& c, const json& v) { c.snapshot_out = v.get<std::string>(); }},
      {"out", Kind::Text, "output file (default stdout)",
       [](RunConfig& c, const json& v) { c.out = v.get<std::string>(); }},
      {"format", Kind::Text, "csv | json", [](RunConfig& c, const json& v) { c.format = v.get<std::string>(); }},
      {"seed", Kind::Int, "seed for randomized checks",
       [](RunConfig& c, const json& v) { c.seed = v.get<std::uint64_t>(); }},
      {"jobs", Kind::Int, "worker threads (default $CHIRALWALK_JOBS or 1)",
       [](RunConfig& c, const json& v) { c.jobs = as_int(v); }},
      {"grid", Kind::Int, "sweep: theta points on [-pi, pi]",
       [](RunConfig& c, const json& v) { c.grid = as_int(v); }},
      {"mode", Kind::Text, "sweep: numeric | analytic | both",
       [](RunConfig& c, const json& v) { c.mode = v.get<std::string>(); }},
      {"theta_grid", Kind::Int, "spectrum: theta points on [-pi, pi]",
       [](RunConfig& c, const json& v) { c.theta_grid = as_int(v); }},
      {"omega", Kind::Real, "scatter: boundary potential",
       [](RunConfig& c, const json& v) { c.omega = as_real(v); }},
      {"source", Kind::Text, "scatter: numeric | analytic",
       [](RunConfig& c, const json& v) { c.source = v.get<std::string>(); }},
      {"quick", Kind::Flag, "selftest: reduced size",
       [](RunConfig& c, const json& v) { c.quick = v.get<bool>(); }},
      {"inject_fault", Kind::Flag, "",
       [](RunConfig& c, const json& v) { c.inject_fault = v.get<bool>(); }},
  };
  return table;
}

const Setting* find_setting(const std::string& key) {
  for (const auto& s : settings()) {
    if (key == s.key) return &s;
  }
  return nullptr;
}

std::string flag_name(const char* key) {
  std::string s = std::string("--") + key;
  for (char& c : s) {
    if (c == '_') c = '-';
  }
  return s;
}

double parse_real(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw InvalidArgument(what + ": expected a number, got '" + text + "'");
  }
  return v;
}

long long parse_int(const std::string& text, const std::string& what) {
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InvalidArgument(what + ": expected an integer, got '" + text + "'");
  }
  return v;
}

void apply_checked(RunConfig& c, const Setting& s, const json& v) {
  const bool ok = (s.kind == Kind::Int && v.is_number_integer()) ||
                  (s.kind == Kind::Real && v.is_number()) ||
                  (s.kind == Kind::Text && v.is_string()) ||
                  (s.kind == Kind::Flag && v.is_boolean()) ||
                  (s.kind == Kind::RealList && v.is_array());
  if (!ok) throw InvalidArgument(std::string("config: wrong type for '") + s.key + "'");
  try {
    s.apply(c, v);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: bad value for '") + s.key + "': " + e.what());
  }
}

}  // namespace

void RunConfig::validate() const {
  static const std::vector<std::string> commands{"build",    "evolve", "sweep",   "spectrum",
                                                 "scatter",  "tree",   "selftest"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end()) {
    throw InvalidArgument("unknown command '" + command + "'");
  }
  static const std::vector<std::string> topologies{"chain", "khalique", "y", "y-ring", "tree"};
  if (std::find(topologies.begin(), topologies.end(), topology) == topologies.end()) {
    throw InvalidArgument("unknown topology '" + topology + "'");
  }
  if (n_sites < 2 || n_sites > 20000) throw InvalidArgument("--n must be in [2, 20000]");
  if (depth < 1 || depth > 12) throw InvalidArgument("--depth must be in [1, 12]");
  if (packet != "gaussian" && packet != "square") throw InvalidArgument("--packet must be gaussian or square");
  if (!std::isfinite(theta) || !std::isfinite(k0) || !std::isfinite(omega)) {
    throw InvalidArgument("angles and omega must be finite");
  }
  if (sigma && !(*sigma > 0.0)) throw InvalidArgument("--sigma must be positive");
  if (!(dt > 0.0)) throw InvalidArgument("--dt must be positive");
  if (t_max && !(*t_max >= 0.0)) throw InvalidArgument("--t-max must be non-negative");
  if (t_max && *t_max / dt > 1e6) throw InvalidArgument("--t-max / --dt gives too many samples");
  if (format != "csv" && format != "json") throw InvalidArgument("--format must be csv or json");
  if (jobs < 0) throw InvalidArgument("--jobs must be >= 0");
  if (grid < 1 || grid > 100000) throw InvalidArgument("--grid must be in [1, 100000]");
  if (theta_grid < 1 || theta_grid > 100000) throw InvalidArgument("--theta-grid must be in [1, 100000]");
  if (mode != "numeric" && mode != "analytic" && mode != "both") {
    throw InvalidArgument("--mode must be numeric, analytic or both");
  }
  if (source != "numeric" && source != "analytic") {
    throw InvalidArgument("--source must be numeric or analytic");
  }
  for (char c : path) {
    if (c != 'L' && c != 'R') throw InvalidArgument("--path must contain only L and R");
  }
}

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
  RunConfig c;
  c.jobs = default_jobs();
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      if (!value.is_string()) throw InvalidArgument("config: 'command' must be a string");
      c.command = value.get<std::string>();
      continue;
    }
    const Setting* s = find_setting(key);
    if (!s) throw InvalidArgument("config: unknown key '" + key + "'");
    apply_checked(c, *s, value);
  }
  return c;
}

std::string config_to_json(const RunConfig& c) {
  json j{{"command", c.command}, {"topology", c.topology}, {"n", c.n_sites},
         {"theta", c.theta},     {"depth", c.depth},       {"path", c.path},
         {"packet", c.packet},   {"k0", c.k0},             {"dt", c.dt},
         {"out", c.out},         {"format", c.format},     {"seed", c.seed},
         {"jobs", c.jobs},       {"grid", c.grid},         {"mode", c.mode},
         {"theta_grid", c.theta_grid}, {"omega", c.omega}, {"source", c.source},
         {"quick", c.quick}};
  if (c.n0) j["n0"] = *c.n0;
  if (c.sigma) j["sigma"] = *c.sigma;
  if (c.support_lo) j["support_lo"] = *c.support_lo;
  if (c.support_hi) j["support_hi"] = *c.support_hi;
  if (c.chain) j["chain"] = *c.chain;
  if (c.t_max) j["t_max"] = *c.t_max;
  if (!c.snapshots.empty()) j["snapshot"] = c.snapshots;
  if (!c.snapshot_out.empty()) j["snapshot_out"] = c.snapshot_out;
  return j.dump(2);
}

int default_jobs() {
  const char* env = std::getenv("CHIRALWALK_JOBS");
  if (!env) return 1;
  try {
    const long long v = parse_int(env, "CHIRALWALK_JOBS");
    return v > 0 && v <= 1024 ? static_cast<int>(v) : 1;
  } catch (const InvalidArgument&) {
    return 1;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chiral continuous-time quantum walks on phased graphs", "chiralwalk"};
  std::string command;
  app.add_option("command", command, "build | evolve | sweep | spectrum | scatter | tree | selftest")
      ->required();
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with the same keys as the flags");

  struct Bound {
    const Setting* setting;
    CLI::Option* option;
    std::string text;
    std::vector<std::string> list;
    bool flag = false;
  };
  std::vector<Bound> bound;
  bound.reserve(settings().size());
  for (const auto& s : settings()) {
    bound.push_back({&s, nullptr, {}, {}, false});
    Bound& b = bound.back();
    const std::string name = flag_name(s.key);
    if (s.kind == Kind::Flag) b.option = app.add_flag(name, b.flag, s.help);
    else if (s.kind == Kind::RealList) b.option = app.add_option(name, b.list, s.help)->delimiter(',');
    else b.option = app.add_option(name, b.text, s.help);
    if (std::string(s.help).empty()) b.option->group("");
  }
  app.get_option("--theta")->excludes(app.get_option("--theta-pi"));
  app.get_option("--k0")->excludes(app.get_option("--k0-pi"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidArgument;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw InvalidArgument("cannot read config file '" + config_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      config = config_from_json(ss.str());
    } else {
      config.jobs = default_jobs();
    }
    config.command = command;
    for (const auto& b : bound) {
      if (b.option->count() == 0) continue;
      const std::string what = flag_name(b.setting->key);
      json v;
      switch (b.setting->kind) {
        case Kind::Int: v = parse_int(b.text, what); break;
        case Kind::Real: v = parse_real(b.text, what); break;
        case Kind::Text: v = b.text; break;
        case Kind::Flag: v = b.flag; break;
        case Kind::RealList: {
          v = json::array();
          for (const auto& t : b.list) v.push_back(parse_real(t, what));
          break;
        }
      }
      apply_checked(config, *b.setting, v);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArgument;
  }
  return run(config, out, err);
}

}  // namespace chiralwalk::cli
