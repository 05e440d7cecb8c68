#ifndef JAMDET_SYSTEM_HPP
#define JAMDET_SYSTEM_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace jamdet {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// All scenario scalars for the uplink pilot phase. Powers are linear relative
// to unit noise variance.
struct SystemConfig {
  int m_r = 1;        // BS antennas
  int m_w = 1;        // jammer antennas
  int k = 0;          // active users
  int tau = 1;        // pilot length = pilots per block
  int l_blocks = 1;   // coherence blocks used for detection
  int t_samples = 1;  // coherence block length (spectral-efficiency analysis only)
  double p = 0.0;     // per-user pilot power
  double q = 0.0;     // jammer per-antenna pilot power
  std::vector<double> beta_users;  // per-user large-scale fading, size k
  double beta_w = 1.0;             // jammer large-scale fading

  int unused_pilots() const { return tau - k; }

  void validate() const {
    if (m_r < 1) throw std::invalid_argument("SystemConfig: m_r must be >= 1");
    if (m_w < 1) throw std::invalid_argument("SystemConfig: m_w must be >= 1");
    if (k < 0) throw std::invalid_argument("SystemConfig: k must be >= 0");
    if (tau < 1) throw std::invalid_argument("SystemConfig: tau must be >= 1");
    if (k >= tau) {
      throw std::invalid_argument(
          "SystemConfig: k must be < tau (the detector needs at least one "
          "unused pilot)");
    }
    if (l_blocks < 1) {
      throw std::invalid_argument("SystemConfig: l_blocks must be >= 1");
    }
    if (t_samples < tau) {
      throw std::invalid_argument("SystemConfig: t_samples must be >= tau");
    }
    if (!(p >= 0.0)) throw std::invalid_argument("SystemConfig: p must be >= 0");
    if (!(q >= 0.0)) throw std::invalid_argument("SystemConfig: q must be >= 0");
    if (!(beta_w > 0.0)) {
      throw std::invalid_argument("SystemConfig: beta_w must be > 0");
    }
    if (static_cast<int>(beta_users.size()) != k) {
      throw std::invalid_argument(
          "SystemConfig: beta_users must have one entry per user (" +
          std::to_string(k) + ")");
    }
    for (double b : beta_users) {
      if (!(b > 0.0)) {
        throw std::invalid_argument(
            "SystemConfig: beta_users entries must be > 0");
      }
    }
  }
};

}  // namespace jamdet

#endif  // JAMDET_SYSTEM_HPP
