#ifndef JAMDET_BLOCK_HPP
#define JAMDET_BLOCK_HPP

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "jamdet/jammer.hpp"
#include "jamdet/pilots.hpp"
#include "jamdet/rng.hpp"
#include "jamdet/system.hpp"

namespace jamdet {

// One coherence block of the pilot phase: channels, noise, and the received
// matrix Y = sum_i (sqrt(tau p) g_i + sqrt(tau q) sum_j c_ij g_w^j) phi_i^T
//           + jamming on unused pilots + N,
// with pilot indices taken from pilot_assignment (identity unless permuted).
struct BlockRealization {
  CMatrix user_channels;           // m_r x k, column i = g_i
  CMatrix jammer_channels;         // m_r x m_w, column j = g_w^(j); zero when absent
  CMatrix noise;                   // m_r x tau
  CMatrix received;                // m_r x tau
  std::vector<int> pilot_assignment;  // size tau; slots 0..k-1 carry the users
  bool jammer_present = false;

  bool identity_assignment() const {
    for (int s = 0; s < static_cast<int>(pilot_assignment.size()); ++s) {
      if (pilot_assignment[s] != s) return false;
    }
    return true;
  }
};

struct DrawHooks {
  bool zero_noise = false;     // test hook: suppress the noise term
  bool permute_pilots = false; // assign pilots to users by random permutation
};

// Draws one block. The stream is consumed in a fixed order (permutation,
// user channels, jammer channels, noise) so a block is reproducible from its
// stream key alone. No draws are consumed for jammer channels when the
// jammer is absent.
inline BlockRealization draw_block(const SystemConfig& cfg,
                                   const PilotBook& book,
                                   const JammerProfile& profile,
                                   int block_index, bool jammer_present,
                                   RngStream& rng, const DrawHooks& hooks = {}) {
  cfg.validate();
  if (book.tau() != cfg.tau) {
    throw std::invalid_argument("draw_block: pilot book does not match config");
  }
  if (block_index < 0 || block_index >= profile.n_blocks()) {
    throw std::invalid_argument("draw_block: block index out of range");
  }
  const CMatrix& coeffs = profile.coeffs[block_index];
  if (coeffs.rows() != cfg.tau || coeffs.cols() != cfg.m_w) {
    throw std::invalid_argument("draw_block: profile does not match config");
  }

  BlockRealization out;
  out.jammer_present = jammer_present;

  out.pilot_assignment.resize(cfg.tau);
  std::iota(out.pilot_assignment.begin(), out.pilot_assignment.end(), 0);
  if (hooks.permute_pilots) {
    for (int i = cfg.tau - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
      std::swap(out.pilot_assignment[i], out.pilot_assignment[j]);
    }
  }

  out.user_channels.resize(cfg.m_r, cfg.k);
  for (int i = 0; i < cfg.k; ++i) {
    const double amp = std::sqrt(cfg.beta_users[i]);
    for (int m = 0; m < cfg.m_r; ++m) {
      out.user_channels(m, i) = amp * rng.next_cgaussian();
    }
  }

  if (jammer_present) {
    out.jammer_channels.resize(cfg.m_r, cfg.m_w);
    const double amp = std::sqrt(cfg.beta_w);
    for (int j = 0; j < cfg.m_w; ++j) {
      for (int m = 0; m < cfg.m_r; ++m) {
        out.jammer_channels(m, j) = amp * rng.next_cgaussian();
      }
    }
  } else {
    out.jammer_channels = CMatrix::Zero(cfg.m_r, cfg.m_w);
  }

  out.noise.resize(cfg.m_r, cfg.tau);
  if (hooks.zero_noise) {
    out.noise.setZero();
  } else {
    for (int i = 0; i < cfg.tau; ++i) {
      for (int m = 0; m < cfg.m_r; ++m) {
        out.noise(m, i) = rng.next_cgaussian();
      }
    }
  }

  // Y = sum_s sqrt(tau p) g_s phi_{pi(s)}^T + sqrt(tau q) G_w (Phi C)^T + N
  out.received = out.noise;
  const double user_amp = std::sqrt(static_cast<double>(cfg.tau) * cfg.p);
  if (cfg.k > 0) {
    if (out.identity_assignment()) {
      out.received.noalias() +=
          user_amp * out.user_channels *
          book.matrix().leftCols(cfg.k).transpose();
    } else {
      for (int s = 0; s < cfg.k; ++s) {
        out.received.noalias() +=
            user_amp * out.user_channels.col(s) *
            book.matrix().col(out.pilot_assignment[s]).transpose();
      }
    }
  }
  if (jammer_present) {
    const double jam_amp = std::sqrt(static_cast<double>(cfg.tau) * cfg.q);
    out.received.noalias() +=
        jam_amp * out.jammer_channels * (book.matrix() * coeffs).transpose();
  }
  return out;
}

// Stacked projections Y_w(l) over the detection window; the detector's sole
// input.
struct UnusedPilotObservations {
  std::vector<CMatrix> blocks;  // each m_r x (tau - k)

  int n_blocks() const { return static_cast<int>(blocks.size()); }
  int m_r() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().rows()); }
  int n_unused() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().cols()); }

  void validate() const {
    if (blocks.empty()) {
      throw std::invalid_argument("UnusedPilotObservations: no blocks");
    }
    for (const CMatrix& b : blocks) {
      if (b.rows() != blocks.front().rows() || b.cols() != blocks.front().cols()) {
        throw std::invalid_argument(
            "UnusedPilotObservations: inconsistent block dimensions");
      }
    }
  }

  void validate_against(const SystemConfig& cfg) const {
    validate();
    if (n_blocks() != cfg.l_blocks || m_r() != cfg.m_r ||
        n_unused() != cfg.unused_pilots()) {
      throw std::invalid_argument(
          "UnusedPilotObservations: dimensions do not match config");
    }
  }
};

// Projects the received matrix onto the unused pilots: column s-k is
// y_i = Y phi_i^* for the pilot i in slot s, s = k..tau-1. Orthonormality
// cancels the user terms exactly.
inline CMatrix project_unused(const BlockRealization& block,
                              const PilotBook& book, int k) {
  const int tau = book.tau();
  if (k >= tau) {
    throw std::invalid_argument(
        "project_unused: no unused pilots (k >= tau)");
  }
  if (k < 0 || k != static_cast<int>(block.user_channels.cols())) {
    throw std::invalid_argument("project_unused: k does not match block");
  }
  if (block.received.cols() != tau) {
    throw std::invalid_argument("project_unused: pilot book does not match block");
  }
  if (block.identity_assignment()) {
    return block.received * book.conjugate_matrix().rightCols(tau - k);
  }
  CMatrix out(block.received.rows(), tau - k);
  for (int s = k; s < tau; ++s) {
    out.col(s - k) = block.received * book.conjugate_matrix().col(block.pilot_assignment[s]);
  }
  return out;
}

}  // namespace jamdet

#endif  // JAMDET_BLOCK_HPP
