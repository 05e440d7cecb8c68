#ifndef JAMDET_PILOTS_HPP
#define JAMDET_PILOTS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace jamdet {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Deterministic orthonormal pilot set: scaled DFT columns. The pilots satisfy
// the transpose-conjugate pairing phi_i^T phi_t^* = delta_{it} (for the DFT
// book this coincides with Hermitian orthonormality).
class PilotBook {
 public:
  explicit PilotBook(int tau) {
    if (tau < 1) throw std::invalid_argument("PilotBook: tau must be >= 1");
    pilots_.resize(tau, tau);
    const double scale = 1.0 / std::sqrt(static_cast<double>(tau));
    for (int i = 0; i < tau; ++i) {
      for (int n = 0; n < tau; ++n) {
        const double phase = -2.0 * std::numbers::pi *
                             static_cast<double>(n) * static_cast<double>(i) /
                             static_cast<double>(tau);
        pilots_(n, i) = std::polar(scale, phase);
      }
    }
    conj_pilots_ = pilots_.conjugate();
  }

  int tau() const { return static_cast<int>(pilots_.cols()); }

  // column i is pilot phi_i
  const CMatrix& matrix() const { return pilots_; }
  const CMatrix& conjugate_matrix() const { return conj_pilots_; }
  CVector pilot(int i) const { return pilots_.col(i); }

 private:
  CMatrix pilots_;
  CMatrix conj_pilots_;
};

inline PilotBook make_pilot_book(int tau) { return PilotBook(tau); }

}  // namespace jamdet

#endif  // JAMDET_PILOTS_HPP
