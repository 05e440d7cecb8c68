#ifndef JAMDET_JAMMER_HPP
#define JAMDET_JAMMER_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jamdet/pilots.hpp"
#include "jamdet/rng.hpp"
#include "jamdet/system.hpp"

namespace jamdet {

enum class JammerStrategy { equal_split, custom };

// Per-block effective jamming coefficients c_ij = v_w^(j)T alpha_i; only these
// products are observable at the BS, so the precoder and signal matrices are
// never materialized separately.
struct JammerProfile {
  JammerStrategy strategy = JammerStrategy::equal_split;
  std::vector<CMatrix> coeffs;  // one tau x m_w matrix per block

  int n_blocks() const { return static_cast<int>(coeffs.size()); }
};

// Equal power split over pilots: c_ij(l) = exp(j theta_j(l)) / sqrt(tau) with
// one uniform phase per jammer antenna per block. This meets the total power
// constraint (sum_ij |c_ij|^2 = m_w), puts m_w/tau on every pilot, and makes
// the per-pilot cross-correlations sum_j c_ij c_i'j^* uniformly equal to
// m_w/tau, which is what gives the unused-pilot rows the I + q~ 11^T
// covariance the detector assumes.
inline JammerProfile make_jammer_profile(const SystemConfig& cfg,
                                         JammerStrategy strategy,
                                         RngStream& rng) {
  cfg.validate();
  if (strategy != JammerStrategy::equal_split) {
    throw std::invalid_argument(
        "make_jammer_profile: only the equal-split strategy is generated; "
        "use make_custom_profile for explicit coefficients");
  }
  JammerProfile profile;
  profile.strategy = JammerStrategy::equal_split;
  profile.coeffs.reserve(cfg.l_blocks);
  const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.tau));
  for (int l = 0; l < cfg.l_blocks; ++l) {
    CMatrix c(cfg.tau, cfg.m_w);
    for (int j = 0; j < cfg.m_w; ++j) {
      const double theta = 2.0 * std::numbers::pi * rng.next_uniform();
      const std::complex<double> cj = std::polar(scale, theta);
      for (int i = 0; i < cfg.tau; ++i) c(i, j) = cj;
    }
    profile.coeffs.push_back(std::move(c));
  }
  return profile;
}

// Caller-supplied coefficients (tests, non-uniform attacks). Dimensions are
// checked; the power constraint is the caller's responsibility.
inline JammerProfile make_custom_profile(const SystemConfig& cfg,
                                         std::vector<CMatrix> coeffs) {
  if (static_cast<int>(coeffs.size()) != cfg.l_blocks) {
    throw std::invalid_argument("make_custom_profile: need one matrix per block");
  }
  for (const CMatrix& c : coeffs) {
    if (c.rows() != cfg.tau || c.cols() != cfg.m_w) {
      throw std::invalid_argument(
          "make_custom_profile: each block must be tau x m_w");
    }
  }
  return JammerProfile{JammerStrategy::custom, std::move(coeffs)};
}

// Total transmitted jamming power of one block's coefficients.
inline double profile_block_power(const CMatrix& coeffs) {
  return coeffs.squaredNorm();
}

// Power placed on pilot i by one block's coefficients: sum_j |c_ij|^2.
inline double profile_pilot_power(const CMatrix& coeffs, int pilot) {
  return coeffs.row(pilot).squaredNorm();
}

}  // namespace jamdet

#endif  // JAMDET_JAMMER_HPP
