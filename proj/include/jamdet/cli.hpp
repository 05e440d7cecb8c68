#ifndef JAMDET_CLI_HPP
#define JAMDET_CLI_HPP

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "jamdet/analysis.hpp"
#include "jamdet/config.hpp"
#include "jamdet/io.hpp"
#include "jamdet/montecarlo.hpp"

namespace jamdet {

namespace cli_detail {

inline int effective_workers(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

inline double elapsed_seconds(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

inline const char* decision_name(Decision d) {
  return d == Decision::jammer_detected ? "jammer-detected" : "clean";
}

}  // namespace cli_detail

// Loads the optional config file, applies command-line overrides on top, and
// fills built-in defaults underneath: overrides > file > defaults.
inline nlohmann::json resolve_config(const std::string& command,
                                     const std::string& config_path,
                                     const nlohmann::json& overrides) {
  nlohmann::json cfg = nlohmann::json::object();
  if (!config_path.empty()) {
    nlohmann::json from_file;
    try {
      from_file = nlohmann::json::parse(read_text_file(config_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config file: ") + e.what());
    }
    cfg = merge_config(cfg, from_file);
  }
  cfg = merge_config(cfg, overrides);
  check_known_keys(cfg, command);
  return fill_defaults(cfg, command);
}

// Single-shot detector run: simulate one detection window (or read one from
// an observation file) and report the estimate and decision.
// Exit codes: 0 clean, 2 jammer detected, 1 error.
inline int cmd_detect(const nlohmann::json& cfg, std::ostream& out,
                      std::ostream& err) {
  try {
    const Scenario sc = parse_scenario(cfg);
    DetectorConfig det = sc.detector;
    det.resolve(sc.system);

    UnusedPilotObservations obs;
    if (cfg.contains("observations")) {
      const std::string path = cfg["observations"].get<std::string>();
      obs = observations_from_json(nlohmann::json::parse(read_text_file(path)));
      try {
        obs.validate_against(sc.system);
      } catch (const std::invalid_argument&) {
        throw ConfigError(
            "observations: file dimensions do not match system "
            "(m_r/l_blocks/tau-k)");
      }
    } else {
      obs = detail::simulate_observations(sc.system, PilotBook(sc.system.tau),
                                          sc.jammer_present, sc.permute_pilots,
                                          sc.fixed_jammer_coeffs, sc.seed,
                                          /*trial=*/0);
    }

    const DetectionReport report = detect(obs, sc.system, det);
    out << "raw_q_hat = " << format_full(report.raw_q_hat) << "\n";
    out << "q_hat = " << format_full(report.q_hat) << "\n";
    out << "mu_prime = " << format_full(report.mu_prime) << "\n";
    out << "statistic_J = " << format_full(report.statistic_j) << "\n";
    out << "decision = " << cli_detail::decision_name(report.decision) << "\n";
    return report.decision == Decision::jammer_detected ? 2 : 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

// Detection probability versus BS antennas (one CSV row per grid point).
inline int cmd_fig1(const nlohmann::json& cfg, const std::string& out_path,
                    std::ostream& out, std::ostream& err) {
  try {
    const auto start = std::chrono::steady_clock::now();
    Scenario base = parse_scenario(cfg);
    if (base.detector.source() != DetectorConfig::Source::target_pfa) {
      throw ConfigError("fig1: detector must specify target_pfa");
    }
    const nlohmann::json& sweep = cfg.at("sweep");
    const std::vector<int> m_r_grid =
        sweep.at("m_r_grid").get<std::vector<int>>();
    std::vector<std::pair<int, int>> variants;
    for (const auto& kl : sweep.at("k_l_variants")) {
      if (!kl.is_array() || kl.size() != 2) {
        throw ConfigError("sweep.k_l_variants: expected [k, l] pairs");
      }
      variants.emplace_back(kl[0].get<int>(), kl[1].get<int>());
    }
    const int workers = cli_detail::effective_workers(parse_run(cfg).threads);
    const auto rows = sweep_antennas(base, m_r_grid, variants, workers);

    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& r : rows) {
      cells.push_back({std::to_string(r.m_r), std::to_string(r.k),
                       std::to_string(r.l), std::to_string(r.tau),
                       format_full(r.q_db), format_full(r.target_pfa),
                       format_full(r.mu_prime), format_full(r.pc_empirical),
                       format_full(r.pc_exact), format_full(r.pc_asymp),
                       format_full(r.ci_low), format_full(r.ci_high),
                       std::to_string(r.n_trials), std::to_string(r.seed)});
    }
    RunManifest manifest;
    manifest.command = "fig1";
    manifest.config = cfg;
    manifest.workers = workers;
    manifest.wall_seconds = cli_detail::elapsed_seconds(start);
    manifest.out_path = out_path;
    std::ostringstream table;
    write_table(table, manifest,
                {"M_r", "K", "L", "tau", "q_dB", "target_pfa", "mu_prime",
                 "pc_empirical", "pc_exact", "pc_asymp", "ci_low", "ci_high",
                 "n_trials", "seed"},
                cells);
    write_text_file(out_path, table.str());
    out << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

// Detection probability versus target false-alarm probability for a list of
// jammer powers.
inline int cmd_fig2(const nlohmann::json& cfg, const std::string& out_path,
                    std::ostream& out, std::ostream& err) {
  try {
    const auto start = std::chrono::steady_clock::now();
    Scenario base = parse_scenario(cfg);
    const nlohmann::json& sweep = cfg.at("sweep");
    const std::vector<double> pfa_grid =
        sweep.at("pfa_grid").get<std::vector<double>>();
    const std::vector<double> q_db_list =
        sweep.at("q_db_list").get<std::vector<double>>();
    const int workers = cli_detail::effective_workers(parse_run(cfg).threads);
    const auto rows = sweep_roc(base, pfa_grid, q_db_list, workers);

    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& r : rows) {
      cells.push_back({format_full(r.target_pfa), format_full(r.q_db),
                       format_full(r.mu_prime), format_full(r.pfa_empirical),
                       format_full(r.pc_empirical), format_full(r.pc_exact),
                       format_full(r.pc_asymp), std::to_string(r.n_trials),
                       std::to_string(r.seed)});
    }
    RunManifest manifest;
    manifest.command = "fig2";
    manifest.config = cfg;
    manifest.workers = workers;
    manifest.wall_seconds = cli_detail::elapsed_seconds(start);
    manifest.out_path = out_path;
    std::ostringstream table;
    write_table(table, manifest,
                {"target_pfa", "q_dB", "mu_prime", "pfa_empirical",
                 "pc_empirical", "pc_exact", "pc_asymp", "n_trials", "seed"},
                cells);
    write_text_file(out_path, table.str());
    out << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

// Closed-form evaluation only: no simulation.
inline int cmd_analyze(const nlohmann::json& cfg, const std::string& out_path,
                       std::ostream& out, std::ostream& err) {
  try {
    const SystemConfig sys = parse_system(cfg);
    DetectorConfig det = parse_detector(cfg);
    det.resolve(sys);
    const double mu_prime = det.mu_prime();
    const double qt = q_tilde(sys.q, sys.m_w, sys.beta_w);

    nlohmann::json result;
    result["m_r"] = sys.m_r;
    result["l"] = sys.l_blocks;
    result["tau"] = sys.tau;
    result["k"] = sys.k;
    result["mu_prime"] = mu_prime;
    result["q_tilde"] = qt;
    result["consistent"] = {
        {"pfa_exact", pfa_exact(mu_prime, sys.m_r, sys.l_blocks, sys.tau,
                                sys.k, Variant::complex_consistent)},
        {"pc_exact", pc_exact(mu_prime, qt, sys.m_r, sys.l_blocks, sys.tau,
                              sys.k, Variant::complex_consistent)}};
    result["paper"] = {
        {"pfa_exact", pfa_exact(mu_prime, sys.m_r, sys.l_blocks, sys.tau,
                                sys.k, Variant::paper_exact)},
        {"pc_exact", pc_exact(mu_prime, qt, sys.m_r, sys.l_blocks, sys.tau,
                              sys.k, Variant::paper_exact)}};
    result["pfa_asymptotic"] =
        pfa_asymptotic(mu_prime, sys.m_r, sys.l_blocks, sys.tau, sys.k);
    result["pc_asymptotic"] =
        pc_asymptotic(mu_prime, qt, sys.m_r, sys.l_blocks, sys.tau, sys.k);

    if (cfg.contains("data_phase")) {
      const nlohmann::json& dp = cfg["data_phase"];
      SpectralEfficiencyParams params;
      params.p = sys.p;
      params.q = sys.q;
      params.rho = config_detail::parse_power(dp, "rho", 0.0);
      params.varrho = config_detail::parse_power(dp, "varrho", 0.0);
      params.beta_users = sys.beta_users;
      params.beta_w = sys.beta_w;
      params.tau = sys.tau;
      params.t_samples = sys.t_samples;
      params.m_w = sys.m_w;
      if (!dp.contains("weights") || (dp["weights"].is_string() &&
                                      dp["weights"] == "equal_split")) {
        params.weights.assign(static_cast<std::size_t>(sys.tau),
                              static_cast<double>(sys.m_w) / sys.tau);
      } else if (dp["weights"].is_array()) {
        params.weights = dp["weights"].get<std::vector<double>>();
      } else {
        throw ConfigError(
            "data_phase.weights: expected \"equal_split\" or an array");
      }
      const SpectralEfficiency se = asymptotic_spectral_efficiency(params);
      nlohmann::json per_user = nlohmann::json::array();
      for (const auto& r : se.per_user) {
        if (r) {
          per_user.push_back(*r);
        } else {
          per_user.push_back("unbounded");
        }
      }
      result["spectral_efficiency"] = {
          {"per_user", per_user},
          {"sum", se.sum ? nlohmann::json(*se.sum) : nlohmann::json("unbounded")}};
    }

    RunManifest manifest;
    manifest.command = "analyze";
    manifest.config = cfg;
    manifest.out_path = out_path;
    nlohmann::json output = {{"manifest", manifest_to_json(manifest)},
                             {"result", result}};
    const std::string text = output.dump(2) + "\n";
    if (!out_path.empty()) {
      write_text_file(out_path, text);
      out << "wrote " << out_path << "\n";
    } else {
      out << text;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

// Threshold inversion only: mu' for a target false-alarm probability.
inline int cmd_threshold(const nlohmann::json& cfg, std::ostream& out,
                         std::ostream& err) {
  try {
    const SystemConfig sys = parse_system(cfg);
    const DetectorConfig det = parse_detector(cfg);
    if (det.source() != DetectorConfig::Source::target_pfa) {
      throw ConfigError("threshold: detector must specify target_pfa");
    }
    const ThresholdResult r = threshold_for_pfa(
        det.source_value(), sys.m_r, sys.l_blocks, sys.tau, sys.k,
        det.variant(), det.threshold_rule());
    nlohmann::json output = {
        {"target_pfa", det.source_value()},
        {"mu_prime", r.mu_prime},
        {"always_fires", r.always_fires},
        {"variant",
         det.variant() == Variant::paper_exact ? "paper" : "consistent"},
        {"threshold_rule",
         det.threshold_rule() == ThresholdRule::asymptotic ? "asymptotic"
                                                           : "exact"},
        {"m_r", sys.m_r},
        {"l", sys.l_blocks},
        {"tau", sys.tau},
        {"k", sys.k}};
    out << output.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace jamdet

#endif  // JAMDET_CLI_HPP
