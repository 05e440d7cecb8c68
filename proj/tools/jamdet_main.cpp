// Command-line front end for the jamming-detection library: single-shot
// detection, figure sweeps, closed-form analysis, and threshold inversion.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "jamdet/cli.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<std::string> variant;
  std::optional<int> threads;
  std::string out_path;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_run_flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--variant", flags.variant,
                  "closed-form variant: consistent | paper")
      ->check(CLI::IsMember({"consistent", "paper"}));
  if (with_run_flags) {
    cmd->add_option("--seed", flags.seed, "base RNG seed");
    cmd->add_option("--trials", flags.trials, "Monte Carlo trials per point");
    cmd->add_option("--threads", flags.threads,
                    "worker threads (0 = hardware)");
  }
  cmd->add_option("--out", flags.out_path, "output file path");
}

nlohmann::json overrides_from(const CommonFlags& flags) {
  nlohmann::json overrides = nlohmann::json::object();
  if (flags.seed) overrides["run"]["seed"] = *flags.seed;
  if (flags.trials) overrides["run"]["trials"] = *flags.trials;
  if (flags.threads) overrides["run"]["threads"] = *flags.threads;
  if (flags.variant) overrides["detector"]["variant"] = *flags.variant;
  return overrides;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GLRT jamming detector for massive MIMO uplink pilots"};
  app.require_subcommand(1);

  CommonFlags detect_flags, fig1_flags, fig2_flags, analyze_flags,
      threshold_flags;

  CLI::App* detect = app.add_subcommand(
      "detect", "simulate one detection window (or read an observation file) "
                "and decide");
  add_common_flags(detect, detect_flags, true);

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "detection probability vs BS antennas (CSV)");
  add_common_flags(fig1, fig1_flags, true);

  CLI::App* fig2 = app.add_subcommand(
      "fig2", "detection probability vs false-alarm target (CSV)");
  add_common_flags(fig2, fig2_flags, true);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "closed-form probabilities and spectral efficiency (JSON)");
  add_common_flags(analyze, analyze_flags, false);

  CLI::App* threshold = app.add_subcommand(
      "threshold", "invert a target false-alarm probability to mu' (JSON)");
  add_common_flags(threshold, threshold_flags, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (detect->parsed()) {
      const nlohmann::json cfg = jamdet::resolve_config(
          "detect", detect_flags.config_path, overrides_from(detect_flags));
      return jamdet::cmd_detect(cfg, std::cout, std::cerr);
    }
    if (fig1->parsed()) {
      const nlohmann::json cfg = jamdet::resolve_config(
          "fig1", fig1_flags.config_path, overrides_from(fig1_flags));
      const std::string out =
          fig1_flags.out_path.empty() ? "fig1.csv" : fig1_flags.out_path;
      return jamdet::cmd_fig1(cfg, out, std::cout, std::cerr);
    }
    if (fig2->parsed()) {
      const nlohmann::json cfg = jamdet::resolve_config(
          "fig2", fig2_flags.config_path, overrides_from(fig2_flags));
      const std::string out =
          fig2_flags.out_path.empty() ? "fig2.csv" : fig2_flags.out_path;
      return jamdet::cmd_fig2(cfg, out, std::cout, std::cerr);
    }
    if (analyze->parsed()) {
      const nlohmann::json cfg = jamdet::resolve_config(
          "analyze", analyze_flags.config_path, overrides_from(analyze_flags));
      return jamdet::cmd_analyze(cfg, analyze_flags.out_path, std::cout,
                                 std::cerr);
    }
    const nlohmann::json cfg = jamdet::resolve_config(
        "threshold", threshold_flags.config_path,
        overrides_from(threshold_flags));
    return jamdet::cmd_threshold(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
