#ifndef JAMDET_ANALYSIS_HPP
#define JAMDET_ANALYSIS_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "jamdet/detector.hpp"
#include "jamdet/special_functions.hpp"
#include "jamdet/system.hpp"

namespace jamdet {

// Effective per-dimension jamming power received on an unused pilot.
inline double q_tilde(double q, int m_w, double beta_w) {
  if (!(q >= 0.0)) throw std::invalid_argument("q_tilde: q must be >= 0");
  if (m_w < 1) throw std::invalid_argument("q_tilde: m_w must be >= 1");
  if (!(beta_w > 0.0)) throw std::invalid_argument("q_tilde: beta_w must be > 0");
  return q * static_cast<double>(m_w) * beta_w;
}

namespace detail {

inline void check_dims(int m_r, int l, int tau, int k) {
  if (m_r < 1 || l < 1 || k < 0 || k >= tau) {
    throw std::invalid_argument("performance formulas: invalid dimensions");
  }
}

// gamma argument x = m_r l (tau-k) mu' + m_r l shared by both hypotheses
inline double gamma_argument(double mu_prime, double mrl, double n_unused) {
  return mrl * n_unused * mu_prime + mrl;
}

}  // namespace detail

// False alarm probability of the threshold test q_hat > mu'. The
// complex-consistent variant uses the Gamma(m_r l, 1) law that the row-sum
// statistic obeys for complex Gaussian rows; the paper-exact variant halves
// the gamma argument (real chi-square accounting). Any mu' < 0 always fires
// because of the clipping of negative estimates.
inline double pfa_exact(double mu_prime, int m_r, int l, int tau, int k,
                        Variant variant) {
  detail::check_dims(m_r, l, tau, k);
  if (mu_prime < 0.0) return 1.0;
  const double mrl = static_cast<double>(m_r) * l;
  const double x = detail::gamma_argument(mu_prime, mrl, tau - k);
  const double scale = (variant == Variant::paper_exact) ? 0.5 : 1.0;
  return 1.0 - gamma_p(mrl, scale * x);
}

// Gaussian limit of pfa_exact for many antennas.
inline double pfa_asymptotic(double mu_prime, int m_r, int l, int tau, int k) {
  detail::check_dims(m_r, l, tau, k);
  const double mrl = static_cast<double>(m_r) * l;
  return q_function(std::sqrt(mrl) * mu_prime * static_cast<double>(tau - k));
}

// Correct detection probability at effective jamming power q~ >= 0; reduces
// to pfa_exact at q~ = 0.
inline double pc_exact(double mu_prime, double q_tilde_value, int m_r, int l,
                       int tau, int k, Variant variant) {
  detail::check_dims(m_r, l, tau, k);
  if (!(q_tilde_value >= 0.0)) {
    throw std::invalid_argument("pc_exact: q_tilde must be >= 0");
  }
  if (mu_prime < 0.0) return 1.0;
  const double mrl = static_cast<double>(m_r) * l;
  const double n_unused = static_cast<double>(tau - k);
  const double x = detail::gamma_argument(mu_prime, mrl, n_unused);
  const double scale = (variant == Variant::paper_exact) ? 0.5 : 1.0;
  return 1.0 - gamma_p(mrl, scale * x / (1.0 + n_unused * q_tilde_value));
}

// Gaussian limit of pc_exact for many antennas.
inline double pc_asymptotic(double mu_prime, double q_tilde_value, int m_r,
                            int l, int tau, int k) {
  detail::check_dims(m_r, l, tau, k);
  if (!(q_tilde_value >= 0.0)) {
    throw std::invalid_argument("pc_asymptotic: q_tilde must be >= 0");
  }
  const double mrl = static_cast<double>(m_r) * l;
  const double n_unused = static_cast<double>(tau - k);
  return 1.0 - q_function(std::sqrt(mrl) * (q_tilde_value - mu_prime) *
                          n_unused / (1.0 + n_unused * q_tilde_value));
}

struct ThresholdResult {
  double mu_prime = 0.0;
  // mu' < 0: clipping makes every decision fire, so both rates saturate at 1
  bool always_fires = false;
};

// Inverts the selected false-alarm formula for the threshold mu'.
inline ThresholdResult threshold_for_pfa(double target_pfa, int m_r, int l,
                                         int tau, int k, Variant variant,
                                         ThresholdRule rule = ThresholdRule::exact) {
  detail::check_dims(m_r, l, tau, k);
  if (!(target_pfa > 0.0 && target_pfa < 1.0)) {
    throw std::invalid_argument("threshold_for_pfa: target must be in (0,1)");
  }
  const double mrl = static_cast<double>(m_r) * l;
  const double n_unused = static_cast<double>(tau - k);
  double mu_prime;
  if (rule == ThresholdRule::asymptotic) {
    mu_prime = q_function_inverse(target_pfa) / (std::sqrt(mrl) * n_unused);
  } else {
    const double scale = (variant == Variant::paper_exact) ? 2.0 : 1.0;
    const double x = gamma_p_inverse(mrl, 1.0 - target_pfa) * scale;
    mu_prime = (x - mrl) / (mrl * n_unused);
  }
  return ThresholdResult{mu_prime, mu_prime < 0.0};
}

inline void DetectorConfig::resolve(const SystemConfig& cfg) {
  cfg.validate();
  switch (source_) {
    case Source::mu_prime:
      mu_prime_ = value_;
      break;
    case Source::target_pfa:
      mu_prime_ =
          threshold_for_pfa(value_, cfg.m_r, cfg.l_blocks, cfg.tau, cfg.k,
                            variant_, rule_)
              .mu_prime;
      break;
    case Source::mu_log:
      mu_prime_ = mu_prime_from_mu(value_, cfg.m_r, cfg.l_blocks, cfg.tau, cfg.k);
      break;
  }
}

// Closed-form operating point: false-alarm and correct-detection
// probabilities, exact and asymptotic, for one (mu', q~) pair.
struct PerformancePoint {
  double mu_prime = 0.0;
  double q_tilde = 0.0;
  int m_r = 1, l = 1, tau = 1, k = 0;
  Variant variant = Variant::complex_consistent;
  double pfa = 0.0;
  double pc = 0.0;
  double pfa_asymp = 0.0;
  double pc_asymp = 0.0;
};

inline PerformancePoint evaluate_performance(double mu_prime, double q_tilde_value,
                                             int m_r, int l, int tau, int k,
                                             Variant variant) {
  PerformancePoint pt;
  pt.mu_prime = mu_prime;
  pt.q_tilde = q_tilde_value;
  pt.m_r = m_r;
  pt.l = l;
  pt.tau = tau;
  pt.k = k;
  pt.variant = variant;
  pt.pfa = pfa_exact(mu_prime, m_r, l, tau, k, variant);
  pt.pc = pc_exact(mu_prime, q_tilde_value, m_r, l, tau, k, variant);
  pt.pfa_asymp = pfa_asymptotic(mu_prime, m_r, l, tau, k);
  pt.pc_asymp = pc_asymptotic(mu_prime, q_tilde_value, m_r, l, tau, k);
  return pt;
}

// Inputs for the large-antenna spectral-efficiency limit: pilot and data
// powers, fading, and the per-pilot jamming weights w_i = sum_j |v^T alpha_i|^2.
struct SpectralEfficiencyParams {
  double p = 0.0;       // user pilot power
  double q = 0.0;       // jammer pilot power per antenna
  double rho = 0.0;     // average user data power
  double varrho = 0.0;  // average jammer data power per antenna
  std::vector<double> beta_users;
  double beta_w = 1.0;
  int tau = 1;
  int t_samples = 1;
  int m_w = 1;
  std::vector<double> weights;  // per pilot, size tau

  void validate() const {
    if (tau < 1 || t_samples < tau) {
      throw std::invalid_argument("SpectralEfficiencyParams: need 1 <= tau <= T");
    }
    if (m_w < 1) throw std::invalid_argument("SpectralEfficiencyParams: m_w >= 1");
    if (beta_users.empty() || static_cast<int>(beta_users.size()) > tau) {
      throw std::invalid_argument(
          "SpectralEfficiencyParams: need 1..tau users");
    }
    if (static_cast<int>(weights.size()) != tau) {
      throw std::invalid_argument(
          "SpectralEfficiencyParams: need one weight per pilot");
    }
    double weight_sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) {
        throw std::invalid_argument(
            "SpectralEfficiencyParams: weights must be >= 0");
      }
      weight_sum += w;
    }
    if (std::abs(weight_sum - m_w) > 1e-6 * m_w) {
      throw std::invalid_argument(
          "SpectralEfficiencyParams: weights must sum to m_w (total jamming "
          "power constraint)");
    }
    if (!(p >= 0.0 && q >= 0.0 && rho >= 0.0 && varrho >= 0.0)) {
      throw std::invalid_argument("SpectralEfficiencyParams: negative power");
    }
    if (!(beta_w > 0.0)) {
      throw std::invalid_argument("SpectralEfficiencyParams: beta_w must be > 0");
    }
  }
};

// Per-user asymptotic rates; a disengaged optional marks a rate that grows
// without bound (the jammer left that user's pilot untouched, or transmits
// no data-phase power at all).
struct SpectralEfficiency {
  std::vector<std::optional<double>> per_user;  // bits/s/Hz
  std::optional<double> sum;
};

inline SpectralEfficiency asymptotic_spectral_efficiency(
    const SpectralEfficiencyParams& params) {
  params.validate();
  const int n_users = static_cast<int>(params.beta_users.size());
  const double prelog =
      1.0 - static_cast<double>(params.tau) / params.t_samples;
  SpectralEfficiency out;
  out.per_user.resize(n_users);
  double total = 0.0;
  bool any_unbounded = false;
  for (int i = 0; i < n_users; ++i) {
    const double w_i = params.weights[i];
    if (params.q == 0.0 || params.varrho == 0.0 || w_i == 0.0) {
      out.per_user[i] = std::nullopt;  // no jamming limit on this user
      any_unbounded = true;
      continue;
    }
    const double ratio = params.beta_users[i] / params.beta_w;
    const double sinr = (params.p / params.q) * (params.rho / params.varrho) *
                        ratio * ratio /
                        (static_cast<double>(params.m_w) * w_i);
    const double rate = prelog * std::log2(1.0 + sinr);
    out.per_user[i] = rate;
    total += rate;
  }
  out.sum = any_unbounded ? std::nullopt : std::optional<double>(total);
  return out;
}

}  // namespace jamdet

#endif  // JAMDET_ANALYSIS_HPP
