#ifndef JAMDET_CONFIG_HPP
#define JAMDET_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "jamdet/montecarlo.hpp"
#include "jamdet/system.hpp"

namespace jamdet {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace config_detail {

using nlohmann::json;

inline const std::map<std::string, std::set<std::string>>& section_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"system",
       {"m_r", "m_w", "k", "tau", "l_blocks", "t_samples", "p_db", "p_linear",
        "q_db", "q_linear", "beta_users", "beta_w"}},
      {"detector",
       {"target_pfa", "mu_prime", "mu_log", "variant", "threshold_rule"}},
      {"run",
       {"trials", "seed", "threads", "jammer_present", "permute_pilots",
        "fixed_jammer_coeffs"}},
      {"sweep", {"m_r_grid", "k_l_variants", "pfa_grid", "q_db_list"}},
      {"data_phase",
       {"rho_db", "rho_linear", "varrho_db", "varrho_linear", "weights"}},
  };
  return keys;
}

inline const std::set<std::string>& root_keys_for(const std::string& command) {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"detect", {"system", "detector", "run", "observations"}},
      {"fig1", {"system", "detector", "run", "sweep"}},
      {"fig2", {"system", "detector", "run", "sweep"}},
      {"analyze", {"system", "detector", "data_phase"}},
      {"threshold", {"system", "detector"}},
  };
  const auto it = keys.find(command);
  if (it == keys.end()) throw ConfigError("unknown command: " + command);
  return it->second;
}

inline double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

inline int require_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<int>();
}

inline bool require_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) throw ConfigError(where + ": expected a boolean");
  return j.get<bool>();
}

// power field given either in dB (default convention, noise variance is one)
// or linear via the explicit _linear suffix
inline double parse_power(const json& section, const std::string& name,
                          double default_db) {
  const std::string db_key = name + "_db";
  const std::string lin_key = name + "_linear";
  const bool has_db = section.contains(db_key);
  const bool has_lin = section.contains(lin_key);
  if (has_db && has_lin) {
    throw ConfigError("system: give exactly one of " + db_key + " / " + lin_key);
  }
  if (has_lin) {
    const double v = require_number(section[lin_key], "system." + lin_key);
    if (v < 0.0) throw ConfigError("system." + lin_key + ": must be >= 0");
    return v;
  }
  if (has_db) return db_to_linear(require_number(section[db_key], "system." + db_key));
  return db_to_linear(default_db);
}

}  // namespace config_detail

// Deep merge: overlay wins, objects merge recursively, everything else is
// replaced. Applies the precedence chain defaults < config file < overrides.
inline nlohmann::json merge_config(nlohmann::json base,
                                   const nlohmann::json& overlay) {
  if (!base.is_object() || !overlay.is_object()) return overlay;
  for (auto it = overlay.begin(); it != overlay.end(); ++it) {
    if (base.contains(it.key())) {
      base[it.key()] = merge_config(base[it.key()], it.value());
    } else {
      base[it.key()] = it.value();
    }
  }
  return base;
}

// Rejects keys outside the command's schema so typos fail loudly instead of
// silently falling back to defaults.
inline void check_known_keys(const nlohmann::json& cfg,
                             const std::string& command) {
  if (!cfg.is_object()) throw ConfigError("config root must be an object");
  const auto& allowed_roots = config_detail::root_keys_for(command);
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    if (!allowed_roots.count(it.key())) {
      throw ConfigError("unknown config key for " + command + ": " + it.key());
    }
    if (it.key() == "observations") {
      if (!it.value().is_string()) {
        throw ConfigError("observations: expected a file path string");
      }
      continue;
    }
    const auto section = config_detail::section_keys().find(it.key());
    if (section == config_detail::section_keys().end()) continue;
    if (!it.value().is_object()) {
      throw ConfigError(it.key() + ": expected an object");
    }
    for (auto kv = it.value().begin(); kv != it.value().end(); ++kv) {
      if (!section->second.count(kv.key())) {
        throw ConfigError("unknown config key: " + it.key() + "." + kv.key());
      }
    }
  }
}

// Built-in scenario defaults (the simulation setting of the reproduced
// figures): m_w = 4, beta_w = 1, tau = 10, q = -17 dB, 1e5 trials.
inline nlohmann::json fill_defaults(nlohmann::json cfg,
                                    const std::string& command) {
  using nlohmann::json;
  if (!cfg.contains("system")) cfg["system"] = json::object();
  if (!cfg.contains("detector")) cfg["detector"] = json::object();
  json& sys = cfg["system"];
  auto put = [](json& obj, const char* key, json value) {
    if (!obj.contains(key)) obj[key] = std::move(value);
  };
  put(sys, "m_r", 100);
  put(sys, "m_w", 4);
  put(sys, "k", 8);
  put(sys, "tau", 10);
  put(sys, "l_blocks", 10);
  put(sys, "t_samples", 200);
  put(sys, "beta_users", 1.0);
  put(sys, "beta_w", 1.0);
  if (!sys.contains("p_db") && !sys.contains("p_linear")) sys["p_db"] = 0.0;
  if (!sys.contains("q_db") && !sys.contains("q_linear")) sys["q_db"] = -17.0;

  json& det = cfg["detector"];
  if (!det.contains("target_pfa") && !det.contains("mu_prime") &&
      !det.contains("mu_log")) {
    det["target_pfa"] = 0.01;
  }
  put(det, "variant", "consistent");
  put(det, "threshold_rule", "exact");

  if (command == "detect" || command == "fig1" || command == "fig2") {
    if (!cfg.contains("run")) cfg["run"] = json::object();
    json& run = cfg["run"];
    put(run, "trials", 100000);
    put(run, "seed", 1);
    put(run, "threads", 0);
    put(run, "jammer_present", true);
    put(run, "permute_pilots", false);
    put(run, "fixed_jammer_coeffs", false);
  }
  if (command == "fig1") {
    if (!cfg.contains("sweep")) cfg["sweep"] = json::object();
    json& sweep = cfg["sweep"];
    put(sweep, "m_r_grid", json::array({10, 20, 50, 100, 200, 300, 400, 500}));
    put(sweep, "k_l_variants",
        json::array({json::array({6, 1}), json::array({4, 1}),
                     json::array({6, 10}), json::array({4, 10})}));
  }
  if (command == "fig2") {
    if (!cfg.contains("sweep")) cfg["sweep"] = json::object();
    json& sweep = cfg["sweep"];
    put(sweep, "pfa_grid", json::array({0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5}));
    put(sweep, "q_db_list", json::array({-23.0, -20.0, -17.0, -14.0}));
  }
  return cfg;
}

inline SystemConfig parse_system(const nlohmann::json& cfg) {
  using config_detail::require_int;
  using config_detail::require_number;
  if (!cfg.contains("system")) throw ConfigError("missing system section");
  const nlohmann::json& sys = cfg["system"];
  SystemConfig out;
  out.m_r = require_int(sys.at("m_r"), "system.m_r");
  out.m_w = require_int(sys.at("m_w"), "system.m_w");
  out.k = require_int(sys.at("k"), "system.k");
  out.tau = require_int(sys.at("tau"), "system.tau");
  out.l_blocks = require_int(sys.at("l_blocks"), "system.l_blocks");
  out.t_samples = require_int(sys.at("t_samples"), "system.t_samples");
  out.p = config_detail::parse_power(sys, "p", 0.0);
  out.q = config_detail::parse_power(sys, "q", -17.0);
  const nlohmann::json& betas = sys.at("beta_users");
  if (betas.is_number()) {
    out.beta_users.assign(static_cast<std::size_t>(std::max(out.k, 0)),
                          betas.get<double>());
  } else if (betas.is_array()) {
    out.beta_users = betas.get<std::vector<double>>();
  } else {
    throw ConfigError("system.beta_users: expected a number or an array");
  }
  out.beta_w = require_number(sys.at("beta_w"), "system.beta_w");
  try {
    out.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }
  return out;
}

inline Variant parse_variant(const nlohmann::json& det) {
  const std::string v = det.value("variant", "consistent");
  if (v == "consistent") return Variant::complex_consistent;
  if (v == "paper") return Variant::paper_exact;
  throw ConfigError("detector.variant: expected \"consistent\" or \"paper\"");
}

inline DetectorConfig parse_detector(const nlohmann::json& cfg) {
  if (!cfg.contains("detector")) throw ConfigError("missing detector section");
  const nlohmann::json& det = cfg["detector"];
  const int n_sources = static_cast<int>(det.contains("target_pfa")) +
                        static_cast<int>(det.contains("mu_prime")) +
                        static_cast<int>(det.contains("mu_log"));
  if (n_sources != 1) {
    throw ConfigError(
        "detector: give exactly one of target_pfa / mu_prime / mu_log");
  }
  const Variant variant = parse_variant(det);
  const std::string rule_name = det.value("threshold_rule", "exact");
  ThresholdRule rule;
  if (rule_name == "exact") {
    rule = ThresholdRule::exact;
  } else if (rule_name == "asymptotic") {
    rule = ThresholdRule::asymptotic;
  } else {
    throw ConfigError(
        "detector.threshold_rule: expected \"exact\" or \"asymptotic\"");
  }
  try {
    if (det.contains("mu_prime")) {
      return DetectorConfig::from_mu_prime(
          config_detail::require_number(det["mu_prime"], "detector.mu_prime"),
          variant);
    }
    if (det.contains("mu_log")) {
      return DetectorConfig::from_mu_log(
          config_detail::require_number(det["mu_log"], "detector.mu_log"),
          variant);
    }
    return DetectorConfig::from_target_pfa(
        config_detail::require_number(det["target_pfa"], "detector.target_pfa"),
        variant, rule);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("detector: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("detector: ") + e.what());
  }
}

struct RunParams {
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency
  bool jammer_present = true;
  bool permute_pilots = false;
  bool fixed_jammer_coeffs = false;
};

inline RunParams parse_run(const nlohmann::json& cfg) {
  RunParams params;
  if (!cfg.contains("run")) return params;
  const nlohmann::json& run = cfg["run"];
  if (run.contains("trials")) {
    if (!run["trials"].is_number_integer() ||
        run["trials"].get<std::int64_t>() < 1) {
      throw ConfigError("run.trials: expected an integer >= 1");
    }
    params.trials = run["trials"].get<std::int64_t>();
  }
  if (run.contains("seed")) {
    if (!run["seed"].is_number_integer()) {
      throw ConfigError("run.seed: expected an integer");
    }
    params.seed = run["seed"].get<std::uint64_t>();
  }
  if (run.contains("threads")) {
    params.threads = config_detail::require_int(run["threads"], "run.threads");
    if (params.threads < 0) throw ConfigError("run.threads: must be >= 0");
  }
  if (run.contains("jammer_present")) {
    params.jammer_present =
        config_detail::require_bool(run["jammer_present"], "run.jammer_present");
  }
  if (run.contains("permute_pilots")) {
    params.permute_pilots =
        config_detail::require_bool(run["permute_pilots"], "run.permute_pilots");
  }
  if (run.contains("fixed_jammer_coeffs")) {
    params.fixed_jammer_coeffs = config_detail::require_bool(
        run["fixed_jammer_coeffs"], "run.fixed_jammer_coeffs");
  }
  return params;
}

inline Scenario parse_scenario(const nlohmann::json& cfg) {
  Scenario sc;
  sc.system = parse_system(cfg);
  sc.detector = parse_detector(cfg);
  const RunParams run = parse_run(cfg);
  sc.n_trials = run.trials;
  sc.seed = run.seed;
  sc.jammer_present = run.jammer_present;
  sc.permute_pilots = run.permute_pilots;
  sc.fixed_jammer_coeffs = run.fixed_jammer_coeffs;
  return sc;
}

}  // namespace jamdet

#endif  // JAMDET_CONFIG_HPP
