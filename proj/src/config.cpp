#include "eup/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace eup {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.contains(key))
      throw ConfigError("unknown key \"" + where + "." + key + "\"");
}

double need_number(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError("missing key \"" + where + "." + key + "\"");
  if (!obj[key].is_number()) throw ConfigError("key \"" + where + "." + key + "\" must be a number");
  return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& where, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError("key \"" + where + "." + key + "\" must be a number");
  return obj[key].get<double>();
}

std::vector<double> need_array(const json& obj, const std::string& where,
                               const std::string& key) {
  if (!obj.contains(key)) throw ConfigError("missing key \"" + where + "." + key + "\"");
  if (!obj[key].is_array()) throw ConfigError("key \"" + where + "." + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& v : obj[key]) {
    if (!v.is_number()) throw ConfigError("key \"" + where + "." + key + "\" must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

DopingProfile parse_doping(const json& d, double epsilon0) {
  if (!d.is_object()) throw ConfigError("key \"problem.doping\" must be an object");
  if (!d.contains("kind")) throw ConfigError("missing key \"problem.doping.kind\"");
  const std::string kind = d["kind"].get<std::string>();
  if (kind == "constant") {
    reject_unknown(d, "problem.doping", {"kind", "level"});
    return DopingProfile::constant(need_number(d, "problem.doping", "level"));
  }
  if (kind == "piecewise-linear") {
    reject_unknown(d, "problem.doping", {"kind", "breakpoints", "values"});
    return DopingProfile::piecewise_linear(need_array(d, "problem.doping", "breakpoints"),
                                           need_array(d, "problem.doping", "values"));
  }
  if (kind == "bump") {
    reject_unknown(d, "problem.doping", {"kind", "base", "level", "interval"});
    // interval defaults to the central half window used by the bump-doping
    // non-existence statement
    double lo = epsilon0 + (1.0 - epsilon0) / 4.0;
    double hi = epsilon0 + 3.0 * (1.0 - epsilon0) / 4.0;
    if (d.contains("interval")) {
      const auto iv = need_array(d, "problem.doping", "interval");
      if (iv.size() != 2)
        throw ConfigError("key \"problem.doping.interval\" must have two entries");
      lo = iv[0];
      hi = iv[1];
    }
    return DopingProfile::bump(need_number(d, "problem.doping", "base"),
                               need_number(d, "problem.doping", "level"), lo, hi);
  }
  throw ConfigError("key \"problem.doping.kind\" must be constant, piecewise-linear or bump");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(root, "",
                 {"problem", "numerics", "oracle", "uniqueness", "scan", "thresholds"});

  RunConfig cfg;
  if (!root.contains("problem")) throw ConfigError("missing key \"problem\"");
  {
    const json& p = root["problem"];
    reject_unknown(p, "problem",
                   {"epsilon0", "theta", "j", "eta0", "m_lower", "doping"});
    cfg.problem.epsilon0 = need_number(p, "problem", "epsilon0");
    cfg.problem.theta = need_number(p, "problem", "theta");
    cfg.problem.j = opt_number(p, "problem", "j", 1.0);
    cfg.problem.eta0 = need_number(p, "problem", "eta0");
    cfg.problem.m_lower = opt_number(p, "problem", "m_lower", 1.5);
    if (p.contains("doping")) cfg.problem.doping = parse_doping(p["doping"], cfg.problem.epsilon0);
    try {
      cfg.problem.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (root.contains("numerics")) {
    const json& n = root["numerics"];
    reject_unknown(n, "numerics",
                   {"cells", "k", "continuation", "k_final", "k_schedule", "tolerance",
                    "max_iterations", "seed"});
    cfg.numerics.cells = static_cast<int>(opt_number(n, "numerics", "cells", 800));
    cfg.numerics.k = opt_number(n, "numerics", "k", 0.5);
    if (n.contains("continuation")) {
      if (!n["continuation"].is_boolean())
        throw ConfigError("key \"numerics.continuation\" must be a boolean");
      cfg.numerics.continuation = n["continuation"].get<bool>();
    }
    cfg.numerics.k_final = opt_number(n, "numerics", "k_final", 1.0 - 1e-6);
    if (n.contains("k_schedule")) cfg.numerics.k_schedule = need_array(n, "numerics", "k_schedule");
    cfg.numerics.tolerance = opt_number(n, "numerics", "tolerance", 1e-10);
    cfg.numerics.max_iterations =
        static_cast<int>(opt_number(n, "numerics", "max_iterations", 50));
    if (n.contains("seed")) {
      if (!n["seed"].is_number_unsigned())
        throw ConfigError("key \"numerics.seed\" must be a nonnegative integer");
      cfg.numerics.seed = n["seed"].get<std::uint64_t>();
    }
    if (cfg.numerics.cells < 8) throw ConfigError("key \"numerics.cells\" must be at least 8");
    if (!(cfg.numerics.k > 0.0 && cfg.numerics.k < 1.0))
      throw ConfigError("key \"numerics.k\" must lie in (0, 1)");
    if (!(cfg.numerics.tolerance > 0.0))
      throw ConfigError("key \"numerics.tolerance\" must be positive");
    if (cfg.numerics.max_iterations < 1)
      throw ConfigError("key \"numerics.max_iterations\" must be positive");
  }
  if (root.contains("oracle")) {
    const json& o = root["oracle"];
    reject_unknown(o, "oracle", {"steps", "bracket"});
    cfg.oracle.steps = static_cast<int>(opt_number(o, "oracle", "steps", 4000));
    if (o.contains("bracket")) {
      const auto br = need_array(o, "oracle", "bracket");
      if (br.size() != 2 || !(br[0] < br[1]))
        throw ConfigError("key \"oracle.bracket\" must be [low, high] with low < high");
      cfg.oracle.bracket_lo = br[0];
      cfg.oracle.bracket_hi = br[1];
    }
  }
  if (root.contains("uniqueness")) {
    const json& u = root["uniqueness"];
    reject_unknown(u, "uniqueness", {"seeds"});
    cfg.uniqueness.seeds = static_cast<int>(opt_number(u, "uniqueness", "seeds", 10));
    if (cfg.uniqueness.seeds < 1)
      throw ConfigError("key \"uniqueness.seeds\" must be positive");
  }
  if (root.contains("scan")) {
    const json& s = root["scan"];
    reject_unknown(s, "scan", {"eta0_values", "bump_levels", "seeds_per_cell"});
    cfg.scan.eta0_values = need_array(s, "scan", "eta0_values");
    cfg.scan.bump_levels = need_array(s, "scan", "bump_levels");
    cfg.scan.seeds_per_cell = static_cast<int>(opt_number(s, "scan", "seeds_per_cell", 3));
    if (cfg.scan.eta0_values.empty())
      throw ConfigError("key \"scan.eta0_values\" must not be empty");
    if (cfg.scan.bump_levels.empty())
      throw ConfigError("key \"scan.bump_levels\" must not be empty");
    if (cfg.scan.seeds_per_cell < 1)
      throw ConfigError("key \"scan.seeds_per_cell\" must be positive");
  }
  if (root.contains("thresholds")) {
    const json& t = root["thresholds"];
    reject_unknown(t, "thresholds", {"eta_bar", "B_upper", "k"});
    cfg.thresholds.eta_bar = opt_number(t, "thresholds", "eta_bar", 2.0);
    if (t.contains("B_upper")) cfg.thresholds.B_upper = need_number(t, "thresholds", "B_upper");
    cfg.thresholds.k = opt_number(t, "thresholds", "k", 1.0);
    if (!(cfg.thresholds.eta_bar > 1.0))
      throw ConfigError("key \"thresholds.eta_bar\" must exceed 1");
    if (!(cfg.thresholds.k > 0.0 && cfg.thresholds.k <= 1.0))
      throw ConfigError("key \"thresholds.k\" must lie in (0, 1]");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

}  // namespace eup
