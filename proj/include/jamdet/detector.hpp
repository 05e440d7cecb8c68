#ifndef JAMDET_DETECTOR_HPP
#define JAMDET_DETECTOR_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "jamdet/block.hpp"
#include "jamdet/special_functions.hpp"
#include "jamdet/system.hpp"

namespace jamdet {

enum class Variant { paper_exact, complex_consistent };
enum class ThresholdRule { exact, asymptotic };
enum class Decision { clean, jammer_detected };

// S = sum_l sum_m |y~_m(l)^H 1|^2: squared modulus of each row sum of the
// unused-pilot observations, accumulated over antennas and blocks. This is
// the sufficient statistic behind the ML estimate.
inline double sum_row_projections(const UnusedPilotObservations& obs) {
  obs.validate();
  double s = 0.0;
  for (const CMatrix& block : obs.blocks) {
    s += (block * CVector::Ones(block.cols())).cwiseAbs2().sum();
  }
  return s;
}

struct MlEstimate {
  double raw_q_hat = 0.0;  // unconstrained stationary point
  double q_hat = 0.0;      // max(raw_q_hat, 0)
};

// ML estimate of the effective jamming power q~ from the row-sum statistic;
// negative estimates are clipped to zero since q~ cannot be negative.
inline MlEstimate ml_estimate(const UnusedPilotObservations& obs,
                              const SystemConfig& cfg) {
  obs.validate_against(cfg);
  const double n_unused = static_cast<double>(cfg.unused_pilots());
  const double mrl = static_cast<double>(cfg.m_r) * cfg.l_blocks;
  const double s = sum_row_projections(obs);
  MlEstimate est;
  est.raw_q_hat = s / (mrl * n_unused * n_unused) - 1.0 / n_unused;
  est.q_hat = std::max(est.raw_q_hat, 0.0);
  return est;
}

enum class LikelihoodConvention {
  real_halved,  // 1/2 factors and sqrt((2pi)^(tau-k) det C) normalization
  complex,      // circularly-symmetric complex Gaussian density
};

// Log-likelihood of the stacked observations for a hypothesized q~ under the
// row covariance C(q~) = I + q~ 11^T. Both conventions share the same argmax;
// the q-dependent part of the complex form is exactly twice the real-halved
// one.
inline double log_likelihood(const UnusedPilotObservations& obs, double q_tilde,
                             LikelihoodConvention convention) {
  obs.validate();
  if (!(q_tilde >= 0.0)) {
    throw std::invalid_argument("log_likelihood: q_tilde must be >= 0");
  }
  const double n_unused = static_cast<double>(obs.n_unused());
  const double mrl = static_cast<double>(obs.m_r()) * obs.n_blocks();
  double frob = 0.0;  // sum ||y~_m||^2
  double s = 0.0;     // sum |y~_m^H 1|^2
  for (const CMatrix& block : obs.blocks) {
    frob += block.squaredNorm();
    s += (block * CVector::Ones(block.cols())).cwiseAbs2().sum();
  }
  const double det_c = 1.0 + n_unused * q_tilde;
  const double quad = frob - q_tilde * s / det_c;  // sum y~^H C^-1 y~
  if (convention == LikelihoodConvention::real_halved) {
    return -0.5 * mrl * n_unused * std::log(2.0 * std::numbers::pi) -
           0.5 * mrl * std::log(det_c) - 0.5 * quad;
  }
  return -mrl * n_unused * std::log(std::numbers::pi) - mrl * std::log(det_c) -
         quad;
}

// Log of the generalized likelihood ratio with q~ replaced by its (clipped)
// ML estimate. When q_hat is the estimate produced from these observations,
// this equals (m_r l / 2) J((tau-k) q_hat).
inline double glrt_log_statistic(const UnusedPilotObservations& obs,
                                 double q_hat, const SystemConfig& cfg) {
  obs.validate_against(cfg);
  if (!(q_hat >= 0.0)) {
    throw std::invalid_argument("glrt_log_statistic: q_hat must be >= 0");
  }
  const double n_unused = static_cast<double>(cfg.unused_pilots());
  const double mrl = static_cast<double>(cfg.m_r) * cfg.l_blocks;
  const double s = sum_row_projections(obs);
  const double one_plus = 1.0 + n_unused * q_hat;
  return -0.5 * mrl * std::log(one_plus) + 0.5 * q_hat * s / one_plus;
}

// Reduces a threshold mu on the likelihood ratio to the equivalent threshold
// mu' compared directly against the ML estimate:
// mu' = J^-1((2 / m_r l) ln mu) / (tau - k). Requires mu >= 1.
inline double mu_prime_from_mu(double mu_log, int m_r, int l, int tau, int k) {
  if (m_r < 1 || l < 1 || k < 0 || k >= tau) {
    throw std::invalid_argument("mu_prime_from_mu: invalid dimensions");
  }
  if (!(mu_log >= 1.0)) {
    throw std::domain_error(
        "mu_prime_from_mu: mu must be >= 1 (J^-1 is defined on [0, inf))");
  }
  const double mrl = static_cast<double>(m_r) * l;
  const double y = 2.0 / mrl * std::log(mu_log);
  return j_function_inverse(y) / static_cast<double>(tau - k);
}

// Decision threshold configuration. Exactly one source is authoritative:
// mu' directly, a target false-alarm probability (inverted via the selected
// variant/rule once system dimensions are known), or the pre-reduction
// likelihood-ratio threshold mu.
class DetectorConfig {
 public:
  enum class Source { mu_prime, target_pfa, mu_log };

  static DetectorConfig from_mu_prime(double mu_prime,
                                      Variant variant = Variant::complex_consistent) {
    DetectorConfig cfg(Source::mu_prime, mu_prime, variant, ThresholdRule::exact);
    cfg.mu_prime_ = mu_prime;
    return cfg;
  }

  static DetectorConfig from_target_pfa(double target_pfa,
                                        Variant variant = Variant::complex_consistent,
                                        ThresholdRule rule = ThresholdRule::exact) {
    if (!(target_pfa > 0.0 && target_pfa < 1.0)) {
      throw std::invalid_argument(
          "DetectorConfig: target_pfa must be in (0,1)");
    }
    return DetectorConfig(Source::target_pfa, target_pfa, variant, rule);
  }

  static DetectorConfig from_mu_log(double mu_log,
                                    Variant variant = Variant::complex_consistent) {
    if (!(mu_log >= 1.0)) {
      throw std::domain_error("DetectorConfig: mu must be >= 1");
    }
    return DetectorConfig(Source::mu_log, mu_log, variant, ThresholdRule::exact);
  }

  Source source() const { return source_; }
  double source_value() const { return value_; }
  Variant variant() const { return variant_; }
  ThresholdRule threshold_rule() const { return rule_; }
  bool resolved() const { return mu_prime_.has_value(); }

  // Computes and caches mu' for the given system dimensions. Defined in
  // analysis.hpp (the target-pfa source needs the closed-form inversion).
  void resolve(const SystemConfig& cfg);

  double mu_prime() const {
    if (!mu_prime_) {
      throw std::runtime_error(
          "DetectorConfig: threshold not resolved against a system config");
    }
    return *mu_prime_;
  }

 private:
  DetectorConfig(Source source, double value, Variant variant, ThresholdRule rule)
      : source_(source), value_(value), variant_(variant), rule_(rule) {}

  Source source_;
  double value_;
  Variant variant_;
  ThresholdRule rule_;
  std::optional<double> mu_prime_;
};

// q_hat > mu' declares the jammer present; ties decide clean (the reduced
// test uses a strict inequality).
inline Decision decide(double q_hat, const DetectorConfig& det_cfg) {
  return q_hat > det_cfg.mu_prime() ? Decision::jammer_detected
                                    : Decision::clean;
}

struct DetectionReport {
  double raw_q_hat = 0.0;
  double q_hat = 0.0;
  double statistic_j = 0.0;  // J((tau-k) q_hat)
  double mu_prime = 0.0;
  Decision decision = Decision::clean;
};

// Full detector chain on one stacked observation window.
inline DetectionReport detect(const UnusedPilotObservations& obs,
                              const SystemConfig& cfg,
                              const DetectorConfig& det_cfg) {
  const MlEstimate est = ml_estimate(obs, cfg);
  DetectionReport report;
  report.raw_q_hat = est.raw_q_hat;
  report.q_hat = est.q_hat;
  report.statistic_j = j_function(static_cast<double>(cfg.unused_pilots()) * est.q_hat);
  report.mu_prime = det_cfg.mu_prime();
  report.decision = decide(est.q_hat, det_cfg);
  return report;
}

}  // namespace jamdet

#endif  // JAMDET_DETECTOR_HPP
