#ifndef JAMDET_MONTECARLO_HPP
#define JAMDET_MONTECARLO_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "jamdet/analysis.hpp"
#include "jamdet/block.hpp"
#include "jamdet/detector.hpp"
#include "jamdet/jammer.hpp"
#include "jamdet/pilots.hpp"
#include "jamdet/rng.hpp"
#include "jamdet/system.hpp"

namespace jamdet {

// One empirical experiment: a system, a resolved or resolvable threshold, a
// hypothesis, and a trial budget. All randomness is a pure function of
// (seed, trial index, block index).
struct Scenario {
  SystemConfig system;
  DetectorConfig detector = DetectorConfig::from_mu_prime(0.0);
  bool jammer_present = false;
  std::int64_t n_trials = 100000;
  std::uint64_t seed = 1;
  bool permute_pilots = false;
  // keep block 0's jamming coefficients for the whole window instead of
  // redrawing per block
  bool fixed_jammer_coeffs = false;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval; stays inside [0,1] and behaves at rates near the
// endpoints, which the saturation region of the detection curves hits.
inline WilsonInterval wilson_interval(std::int64_t successes, std::int64_t n,
                                      double z = 1.959963984540054) {
  if (n < 1 || successes < 0 || successes > n) {
    throw std::invalid_argument("wilson_interval: need 0 <= successes <= n");
  }
  const double nn = static_cast<double>(n);
  const double p_hat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p_hat + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn)) / denom;
  // center == half at the endpoints up to rounding; pin them
  const double low = (successes == 0) ? 0.0 : std::max(0.0, center - half);
  const double high = (successes == n) ? 1.0 : std::min(1.0, center + half);
  return WilsonInterval{low, high};
}

struct EmpiricalEstimate {
  std::int64_t detections = 0;
  std::int64_t n_trials = 0;
  double rate = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 1.0;
  double mean_q_hat = 0.0;
};

namespace detail {

// One detection window: fresh jamming coefficients, L fresh blocks, projected
// onto the unused pilots. All randomness is keyed by (seed, trial, block).
inline UnusedPilotObservations simulate_observations(
    const SystemConfig& cfg, const PilotBook& book, bool jammer_present,
    bool permute_pilots, bool fixed_jammer_coeffs, std::uint64_t seed,
    std::uint64_t trial) {
  RngStream coeff_stream(seed, trial, 0, StreamRole::jammer_coeffs);
  JammerProfile profile =
      make_jammer_profile(cfg, JammerStrategy::equal_split, coeff_stream);
  if (fixed_jammer_coeffs) {
    for (int l = 1; l < cfg.l_blocks; ++l) profile.coeffs[l] = profile.coeffs[0];
  }

  const DrawHooks hooks{/*zero_noise=*/false, permute_pilots};
  UnusedPilotObservations obs;
  obs.blocks.resize(cfg.l_blocks);
  for (int l = 0; l < cfg.l_blocks; ++l) {
    RngStream block_stream(seed, trial, static_cast<std::uint64_t>(l),
                           StreamRole::block_draw);
    const BlockRealization block = draw_block(cfg, book, profile, l,
                                              jammer_present, block_stream, hooks);
    obs.blocks[l] = project_unused(block, book, cfg.k);
  }
  return obs;
}

struct TrialOutcome {
  bool detected = false;
  double q_hat = 0.0;
};

inline TrialOutcome run_one_trial(const SystemConfig& cfg,
                                  const PilotBook& book, double mu_prime,
                                  bool jammer_present, bool permute_pilots,
                                  bool fixed_jammer_coeffs, std::uint64_t seed,
                                  std::uint64_t trial) {
  const UnusedPilotObservations obs =
      simulate_observations(cfg, book, jammer_present, permute_pilots,
                            fixed_jammer_coeffs, seed, trial);
  const MlEstimate est = ml_estimate(obs, cfg);
  return TrialOutcome{est.q_hat > mu_prime, est.q_hat};
}

}  // namespace detail

// Runs the scenario's trials and counts detections. Trials are independent
// work items scheduled in fixed-size chunks; partial results are reduced in
// chunk order, so counts, rates and mean_q_hat are bit-identical for a given
// (scenario, seed) regardless of the number of workers.
inline EmpiricalEstimate run_trials(const Scenario& scenario, int n_workers = 1) {
  scenario.system.validate();
  if (scenario.n_trials < 1) {
    throw std::invalid_argument("run_trials: n_trials must be >= 1");
  }
  DetectorConfig det = scenario.detector;
  if (!det.resolved()) det.resolve(scenario.system);
  const double mu_prime = det.mu_prime();
  const PilotBook book(scenario.system.tau);

  constexpr std::int64_t kChunk = 1024;
  const std::int64_t n_chunks = (scenario.n_trials + kChunk - 1) / kChunk;

  struct ChunkPartial {
    std::int64_t detections = 0;
    double sum_q_hat = 0.0;
  };
  std::vector<ChunkPartial> partials(static_cast<std::size_t>(n_chunks));
  std::atomic<std::int64_t> next_chunk{0};

  auto worker = [&]() {
    for (;;) {
      const std::int64_t c = next_chunk.fetch_add(1);
      if (c >= n_chunks) return;
      const std::int64_t begin = c * kChunk;
      const std::int64_t end = std::min(begin + kChunk, scenario.n_trials);
      ChunkPartial partial;
      for (std::int64_t t = begin; t < end; ++t) {
        const detail::TrialOutcome outcome = detail::run_one_trial(
            scenario.system, book, mu_prime, scenario.jammer_present,
            scenario.permute_pilots, scenario.fixed_jammer_coeffs,
            scenario.seed, static_cast<std::uint64_t>(t));
        partial.detections += outcome.detected ? 1 : 0;
        partial.sum_q_hat += outcome.q_hat;
      }
      partials[static_cast<std::size_t>(c)] = partial;
    }
  };

  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) threads.emplace_back(worker);
    for (std::thread& th : threads) th.join();
  }

  EmpiricalEstimate est;
  est.n_trials = scenario.n_trials;
  double sum_q_hat = 0.0;
  for (const ChunkPartial& partial : partials) {
    est.detections += partial.detections;
    sum_q_hat += partial.sum_q_hat;
  }
  est.rate = static_cast<double>(est.detections) / static_cast<double>(est.n_trials);
  est.mean_q_hat = sum_q_hat / static_cast<double>(est.n_trials);
  const WilsonInterval ci = wilson_interval(est.detections, est.n_trials);
  est.ci95_low = ci.low;
  est.ci95_high = ci.high;
  return est;
}

namespace detail {

// broadcast a per-user fading value when a sweep changes the user count
inline void resize_users(SystemConfig& cfg, int k) {
  const double beta = cfg.beta_users.empty() ? 1.0 : cfg.beta_users.front();
  cfg.k = k;
  cfg.beta_users.assign(static_cast<std::size_t>(k), beta);
}

inline constexpr std::uint64_t kSweepAntennaTag = 0xF161;
inline constexpr std::uint64_t kSweepRocH0Tag = 0xF162;
inline constexpr std::uint64_t kSweepRocH1Tag = 0xF163;

}  // namespace detail

struct AntennaSweepRow {
  int m_r = 0, k = 0, l = 0, tau = 0;
  double q_db = 0.0;
  double target_pfa = 0.0;
  double mu_prime = 0.0;
  double pc_empirical = 0.0;
  double pc_exact = 0.0;
  double pc_asymp = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::int64_t n_trials = 0;
  std::uint64_t seed = 0;
};

// Detection probability versus antenna count for (k, l) variants. The
// threshold is re-inverted from the base detector's target false-alarm
// probability at every grid point.
inline std::vector<AntennaSweepRow> sweep_antennas(
    const Scenario& base, const std::vector<int>& m_r_list,
    const std::vector<std::pair<int, int>>& k_l_variants, int n_workers = 1) {
  if (base.detector.source() != DetectorConfig::Source::target_pfa) {
    throw std::invalid_argument(
        "sweep_antennas: base detector must carry a target_pfa source");
  }
  const double target = base.detector.source_value();
  std::vector<AntennaSweepRow> rows;
  rows.reserve(m_r_list.size() * k_l_variants.size());
  for (std::size_t v = 0; v < k_l_variants.size(); ++v) {
    for (std::size_t im = 0; im < m_r_list.size(); ++im) {
      Scenario sc = base;
      sc.jammer_present = true;
      sc.system.m_r = m_r_list[im];
      sc.system.l_blocks = k_l_variants[v].second;
      detail::resize_users(sc.system, k_l_variants[v].first);
      sc.system.validate();
      sc.detector = DetectorConfig::from_target_pfa(
          target, base.detector.variant(), base.detector.threshold_rule());
      sc.detector.resolve(sc.system);
      sc.seed = derive_key(base.seed, detail::kSweepAntennaTag, v, im);

      const EmpiricalEstimate est = run_trials(sc, n_workers);
      const double qt = q_tilde(sc.system.q, sc.system.m_w, sc.system.beta_w);

      AntennaSweepRow row;
      row.m_r = sc.system.m_r;
      row.k = sc.system.k;
      row.l = sc.system.l_blocks;
      row.tau = sc.system.tau;
      row.q_db = linear_to_db(sc.system.q);
      row.target_pfa = target;
      row.mu_prime = sc.detector.mu_prime();
      row.pc_empirical = est.rate;
      row.pc_exact = pc_exact(row.mu_prime, qt, sc.system.m_r, sc.system.l_blocks,
                              sc.system.tau, sc.system.k, base.detector.variant());
      row.pc_asymp = pc_asymptotic(row.mu_prime, qt, sc.system.m_r,
                                   sc.system.l_blocks, sc.system.tau, sc.system.k);
      row.ci_low = est.ci95_low;
      row.ci_high = est.ci95_high;
      row.n_trials = est.n_trials;
      row.seed = sc.seed;
      rows.push_back(row);
    }
  }
  return rows;
}

struct RocSweepRow {
  double target_pfa = 0.0;
  double q_db = 0.0;
  double mu_prime = 0.0;
  double pfa_empirical = 0.0;
  double pc_empirical = 0.0;
  double pc_exact = 0.0;
  double pc_asymp = 0.0;
  std::int64_t n_trials = 0;
  std::uint64_t seed = 0;
};

// Detection probability versus target false-alarm probability for a list of
// jammer powers. Beyond target 0.5 the inverted threshold goes negative and
// both rates saturate at one, so such grid values are rejected.
inline std::vector<RocSweepRow> sweep_roc(const Scenario& base,
                                          const std::vector<double>& pfa_grid,
                                          const std::vector<double>& q_db_list,
                                          int n_workers = 1) {
  base.system.validate();
  for (double g : pfa_grid) {
    if (!(g > 0.0 && g <= 0.5)) {
      throw std::invalid_argument(
          "sweep_roc: target P_FA grid must lie in (0, 0.5]; beyond 0.5 the "
          "threshold mu' is negative and both rates saturate at 1");
    }
  }
  std::vector<RocSweepRow> rows;
  rows.reserve(pfa_grid.size() * q_db_list.size());
  for (std::size_t ip = 0; ip < pfa_grid.size(); ++ip) {
    const double target = pfa_grid[ip];
    DetectorConfig det = DetectorConfig::from_target_pfa(
        target, base.detector.variant(), base.detector.threshold_rule());
    det.resolve(base.system);

    Scenario h0 = base;
    h0.jammer_present = false;
    h0.detector = det;
    h0.seed = derive_key(base.seed, detail::kSweepRocH0Tag, ip);
    const EmpiricalEstimate pfa_est = run_trials(h0, n_workers);

    for (std::size_t iq = 0; iq < q_db_list.size(); ++iq) {
      Scenario h1 = base;
      h1.jammer_present = true;
      h1.system.q = db_to_linear(q_db_list[iq]);
      h1.detector = det;
      h1.seed = derive_key(base.seed, detail::kSweepRocH1Tag, ip, iq);
      const EmpiricalEstimate pc_est = run_trials(h1, n_workers);
      const double qt = q_tilde(h1.system.q, h1.system.m_w, h1.system.beta_w);

      RocSweepRow row;
      row.target_pfa = target;
      row.q_db = q_db_list[iq];
      row.mu_prime = det.mu_prime();
      row.pfa_empirical = pfa_est.rate;
      row.pc_empirical = pc_est.rate;
      row.pc_exact = pc_exact(row.mu_prime, qt, h1.system.m_r, h1.system.l_blocks,
                              h1.system.tau, h1.system.k, base.detector.variant());
      row.pc_asymp = pc_asymptotic(row.mu_prime, qt, h1.system.m_r,
                                   h1.system.l_blocks, h1.system.tau, h1.system.k);
      row.n_trials = pc_est.n_trials;
      row.seed = h1.seed;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace jamdet

#endif  // JAMDET_MONTECARLO_HPP
