#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "jamdet/analysis.hpp"
#include "jamdet/block.hpp"
#include "jamdet/jammer.hpp"
#include "jamdet/pilots.hpp"
#include "jamdet/rng.hpp"
#include "jamdet/system.hpp"

using namespace jamdet;

namespace {

SystemConfig small_config() {
  SystemConfig cfg;
  cfg.m_r = 8;
  cfg.m_w = 3;
  cfg.k = 2;
  cfg.tau = 5;
  cfg.l_blocks = 1;
  cfg.t_samples = 20;
  cfg.p = 1.0;
  cfg.q = 0.4;
  cfg.beta_users = {0.8, 1.2};
  cfg.beta_w = 1.25;
  return cfg;
}

// Eq.-by-eq reassembly of the received matrix from the stored constituents,
// written with scalar loops so it cannot share a code path with draw_block.
CMatrix reassemble(const SystemConfig& cfg, const PilotBook& book,
                   const JammerProfile& profile, int block_index,
                   const BlockRealization& block) {
  CMatrix y = CMatrix::Zero(cfg.m_r, cfg.tau);
  const double user_amp = std::sqrt(cfg.tau * cfg.p);
  for (int s = 0; s < cfg.k; ++s) {
    const int pilot = block.pilot_assignment[s];
    for (int m = 0; m < cfg.m_r; ++m) {
      for (int t = 0; t < cfg.tau; ++t) {
        y(m, t) += user_amp * block.user_channels(m, s) * book.matrix()(t, pilot);
      }
    }
  }
  if (block.jammer_present) {
    const double jam_amp = std::sqrt(cfg.tau * cfg.q);
    const CMatrix& c = profile.coeffs[block_index];
    for (int i = 0; i < cfg.tau; ++i) {
      for (int j = 0; j < cfg.m_w; ++j) {
        for (int m = 0; m < cfg.m_r; ++m) {
          for (int t = 0; t < cfg.tau; ++t) {
            y(m, t) += jam_amp * c(i, j) * block.jammer_channels(m, j) *
                       book.matrix()(t, i);
          }
        }
      }
    }
  }
  y += block.noise;
  return y;
}

}  // namespace

TEST_CASE("pilot book is orthonormal under the transpose-conjugate pairing",
          "[model]") {
  for (int tau : {1, 2, 3, 4, 7, 10, 16, 33, 64}) {
    const PilotBook book(tau);
    const CMatrix gram = book.matrix().transpose() * book.matrix().conjugate();
    const CMatrix eye = CMatrix::Identity(tau, tau);
    REQUIRE((gram - eye).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("pilot book edge cases", "[model]") {
  const PilotBook single(1);
  REQUIRE(std::abs(single.matrix()(0, 0) - std::complex<double>(1.0, 0.0)) <
          1e-15);
  REQUIRE(make_pilot_book(10).tau() == 10);
  REQUIRE_THROWS_AS(make_pilot_book(0), std::invalid_argument);
  REQUIRE_THROWS_AS(make_pilot_book(-3), std::invalid_argument);
}

TEST_CASE("equal-split profile meets the power constraints", "[model]") {
  SystemConfig cfg = small_config();
  cfg.m_w = 4;
  cfg.tau = 10;
  cfg.k = 8;
  cfg.beta_users = std::vector<double>(8, 1.0);
  cfg.l_blocks = 5;
  RngStream rng(derive_key(11));
  const JammerProfile profile =
      make_jammer_profile(cfg, JammerStrategy::equal_split, rng);
  REQUIRE(profile.n_blocks() == 5);
  for (const CMatrix& c : profile.coeffs) {
    REQUIRE(std::abs(profile_block_power(c) - 4.0) < 1e-9 * 4.0);
    for (int i = 0; i < cfg.tau; ++i) {
      REQUIRE(std::abs(profile_pilot_power(c, i) - 0.4) < 1e-9 * 0.4);
    }
  }
}

TEST_CASE("single-antenna single-pilot profile has unit power", "[model]") {
  SystemConfig cfg;
  cfg.m_r = 1;
  cfg.m_w = 1;
  cfg.k = 0;
  cfg.tau = 1;
  cfg.t_samples = 1;
  cfg.beta_users = {};
  RngStream rng(derive_key(3));
  const JammerProfile profile =
      make_jammer_profile(cfg, JammerStrategy::equal_split, rng);
  REQUIRE(std::abs(std::norm(profile.coeffs[0](0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("equal-split cross-correlations are uniform", "[model]") {
  SystemConfig cfg;
  cfg.m_r = 2;
  cfg.m_w = 2;
  cfg.k = 1;
  cfg.tau = 4;
  cfg.t_samples = 4;
  cfg.beta_users = {1.0};
  RngStream rng(derive_key(17));
  const JammerProfile profile =
      make_jammer_profile(cfg, JammerStrategy::equal_split, rng);
  const CMatrix& c = profile.coeffs[0];
  for (int i = 0; i < 4; ++i) {
    for (int t = 0; t < 4; ++t) {
      const std::complex<double> cross = (c.row(i) * c.row(t).adjoint())(0, 0);
      REQUIRE(std::abs(cross - std::complex<double>(0.5, 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("profile construction validates the config", "[model]") {
  SystemConfig bad = small_config();
  bad.k = bad.tau;  // no unused pilots
  bad.beta_users = std::vector<double>(bad.k, 1.0);
  RngStream rng(derive_key(1));
  REQUIRE_THROWS_AS(make_jammer_profile(bad, JammerStrategy::equal_split, rng),
                    std::invalid_argument);
}

TEST_CASE("received is pure noise without users and jammer", "[model]") {
  SystemConfig cfg = small_config();
  cfg.p = 0.0;
  const PilotBook book(cfg.tau);
  RngStream prof_rng(derive_key(2));
  const JammerProfile profile =
      make_jammer_profile(cfg, JammerStrategy::equal_split, prof_rng);
  RngStream rng(derive_key(4));
  const BlockRealization block =
      draw_block(cfg, book, profile, 0, /*jammer_present=*/false, rng);
  REQUIRE((block.received - block.noise).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("reconstruction reproduces the received matrix", "[model]") {
  SystemConfig cfg = small_config();
  const PilotBook book(cfg.tau);
  RngStream prof_rng(derive_key(21));
  const JammerProfile profile =
      make_jammer_profile(cfg, JammerStrategy::equal_split, prof_rng);
  for (bool jammer : {false, true}) {
    for (bool permute : {false, true}) {
      RngStream rng(derive_key(31, jammer ? 1 : 0, permute ? 1 : 0));
      const BlockRealization block = draw_block(
          cfg, book, profile, 0, jammer, rng, DrawHooks{false, permute});
      const CMatrix rebuilt = reassemble(cfg, book, profile, 0, block);
      REQUIRE((rebuilt - block.received).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("noiseless jammer-only column power matches the model variance",
          "[model]") {
  SystemConfig cfg;
  cfg.m_r = 6;
  cfg.m_w = 4;
  cfg.k = 0;
  cfg.tau = 10;
  cfg.t_samples = 10;
  cfg.q = 0.25;
  cfg.beta_w = 1.0;
  cfg.beta_users = {};
  const PilotBook book(cfg.tau);
  const double expected = cfg.m_r * cfg.q * cfg.m_w * cfg.beta_w;

  const int n_draws = 10000;
  double sum = 0.0, sum_sq = 0.0;
  for (int d = 0; d < n_draws; ++d) {
    RngStream prof_rng(7, d, 0, StreamRole::jammer_coeffs);
    const JammerProfile profile =
        make_jammer_profile(cfg, JammerStrategy::equal_split, prof_rng);
    RngStream rng(7, d, 0, StreamRole::block_draw);
    const BlockRealization block = draw_block(cfg, book, profile, 0, true, rng,
                                              DrawHooks{/*zero_noise=*/true});
    const CMatrix proj = project_unused(block, book, 0);
    const double stat = proj.colwise().squaredNorm().mean();
    sum += stat;
    sum_sq += stat * stat;
  }
  const double mean = sum / n_draws;
  const double sd = std::sqrt((sum_sq / n_draws - mean * mean) / n_draws);
  REQUIRE(std::abs(mean - expected) < 3.0 * sd);
}

TEST_CASE("projection nulls the user pilots exactly", "[model]") {
  SystemConfig cfg = small_config();
  cfg.q = 0.0;
  const PilotBook book(cfg.tau);
  RngStream prof_rng(derive_key(41));
  const JammerProfile profile =
      make_jammer_profile(cfg, JammerStrategy::equal_split, prof_rng);
  for (bool permute : {false, true}) {
    RngStream rng(derive_key(42, permute ? 1 : 0));
    const BlockRealization block =
        draw_block(cfg, book, profile, 0, /*jammer_present=*/false, rng,
                   DrawHooks{/*zero_noise=*/true, permute});
    const CMatrix proj = project_unused(block, book, cfg.k);
    REQUIRE(proj.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("projected entries have unit variance under the null", "[model]") {
  SystemConfig cfg = small_config();
  const PilotBook book(cfg.tau);
  RngStream prof_rng(derive_key(51));
  const JammerProfile profile =
      make_jammer_profile(cfg, JammerStrategy::equal_split, prof_rng);
  const int n_draws = 5000;  // 8 rows x 3 columns each -> 1.2e5 samples
  double sum = 0.0, sum_sq = 0.0;
  for (int d = 0; d < n_draws; ++d) {
    RngStream rng(9, d, 0, StreamRole::block_draw);
    const BlockRealization block =
        draw_block(cfg, book, profile, 0, /*jammer_present=*/false, rng);
    const double stat =
        project_unused(block, book, cfg.k).cwiseAbs2().mean();
    sum += stat;
    sum_sq += stat * stat;
  }
  const double mean = sum / n_draws;
  const double sd = std::sqrt((sum_sq / n_draws - mean * mean) / n_draws);
  REQUIRE(std::abs(mean - 1.0) < 3.0 * sd);
}

TEST_CASE("projected entries have variance 1 + q~ under jamming", "[model]") {
  SystemConfig cfg = small_config();
  const PilotBook book(cfg.tau);
  const double qt = q_tilde(cfg.q, cfg.m_w, cfg.beta_w);
  const int n_draws = 5000;
  double sum = 0.0, sum_sq = 0.0;
  for (int d = 0; d < n_draws; ++d) {
    RngStream prof_rng(13, d, 0, StreamRole::jammer_coeffs);
    const JammerProfile profile =
        make_jammer_profile(cfg, JammerStrategy::equal_split, prof_rng);
    RngStream rng(13, d, 0, StreamRole::block_draw);
    const BlockRealization block =
        draw_block(cfg, book, profile, 0, /*jammer_present=*/true, rng);
    const double stat =
        project_unused(block, book, cfg.k).cwiseAbs2().mean();
    sum += stat;
    sum_sq += stat * stat;
  }
  const double mean = sum / n_draws;
  const double sd = std::sqrt((sum_sq / n_draws - mean * mean) / n_draws);
  REQUIRE(std::abs(mean - (1.0 + qt)) < 3.0 * sd);
}

TEST_CASE("row covariance matches I + q~ 11^T entrywise", "[model]") {
  SystemConfig cfg = small_config();
  const PilotBook book(cfg.tau);
  const double qt = q_tilde(cfg.q, cfg.m_w, cfg.beta_w);
  const int n_unused = cfg.unused_pilots();
  const int n_draws = 13000;  // 8 rows per draw -> 1.04e5 row samples

  // per-draw means of the row outer products; draws are independent
  std::vector<CMatrix> samples;
  samples.reserve(n_draws);
  CMatrix mean = CMatrix::Zero(n_unused, n_unused);
  for (int d = 0; d < n_draws; ++d) {
    RngStream prof_rng(23, d, 0, StreamRole::jammer_coeffs);
    const JammerProfile profile =
        make_jammer_profile(cfg, JammerStrategy::equal_split, prof_rng);
    RngStream rng(23, d, 0, StreamRole::block_draw);
    const BlockRealization block =
        draw_block(cfg, book, profile, 0, /*jammer_present=*/true, rng);
    const CMatrix proj = project_unused(block, book, cfg.k);
    CMatrix outer = CMatrix::Zero(n_unused, n_unused);
    for (int m = 0; m < cfg.m_r; ++m) {
      const CVector row = proj.row(m).transpose();
      outer += row * row.adjoint();
    }
    outer /= static_cast<double>(cfg.m_r);
    samples.push_back(outer);
    mean += outer;
  }
  mean /= static_cast<double>(n_draws);

  CMatrix target = CMatrix::Identity(n_unused, n_unused);
  target.array() += qt;

  // entrywise standard errors from the draw-level spread
  Eigen::MatrixXd var_re = Eigen::MatrixXd::Zero(n_unused, n_unused);
  Eigen::MatrixXd var_im = Eigen::MatrixXd::Zero(n_unused, n_unused);
  for (const CMatrix& s : samples) {
    var_re.array() += (s - mean).real().array().square();
    var_im.array() += (s - mean).imag().array().square();
  }
  var_re /= static_cast<double>(n_draws);
  var_im /= static_cast<double>(n_draws);
  for (int i = 0; i < n_unused; ++i) {
    for (int j = 0; j < n_unused; ++j) {
      const double se_re = std::sqrt(var_re(i, j) / n_draws);
      const double se_im = std::sqrt(var_im(i, j) / n_draws);
      REQUIRE(std::abs(mean(i, j).real() - target(i, j).real()) < 3.0 * se_re);
      REQUIRE(std::abs(mean(i, j).imag()) < std::max(3.0 * se_im, 1e-12));
    }
  }
}

TEST_CASE("projection argument checks", "[model]") {
  SystemConfig cfg = small_config();
  const PilotBook book(cfg.tau);
  RngStream prof_rng(derive_key(61));
  const JammerProfile profile =
      make_jammer_profile(cfg, JammerStrategy::equal_split, prof_rng);
  RngStream rng(derive_key(62));
  const BlockRealization block = draw_block(cfg, book, profile, 0, false, rng);
  REQUIRE_THROWS_WITH(project_unused(block, book, cfg.tau),
                      Catch::Matchers::ContainsSubstring("unused"));
  REQUIRE_THROWS_AS(project_unused(block, book, cfg.k + 1),
                    std::invalid_argument);
}

TEST_CASE("draw_block dimension checks", "[model]") {
  SystemConfig cfg = small_config();
  const PilotBook book(cfg.tau);
  const PilotBook wrong_book(cfg.tau + 1);
  RngStream prof_rng(derive_key(71));
  const JammerProfile profile =
      make_jammer_profile(cfg, JammerStrategy::equal_split, prof_rng);
  RngStream rng(derive_key(72));
  REQUIRE_THROWS_AS(draw_block(cfg, wrong_book, profile, 0, false, rng),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(draw_block(cfg, book, profile, 9, false, rng),
                    std::invalid_argument);
  SystemConfig other = cfg;
  other.tau = 6;
  other.t_samples = 20;
  REQUIRE_THROWS_AS(
      draw_block(other, PilotBook(6), profile, 0, false, rng),
      std::invalid_argument);
}

TEST_CASE("system config validation", "[model]") {
  SystemConfig cfg = small_config();
  REQUIRE_NOTHROW(cfg.validate());
  SystemConfig bad = cfg;
  bad.k = bad.tau;
  bad.beta_users = std::vector<double>(bad.k, 1.0);
  REQUIRE_THROWS_WITH(bad.validate(),
                      Catch::Matchers::ContainsSubstring("unused pilot"));
  bad = cfg;
  bad.t_samples = bad.tau - 1;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.q = -0.1;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.beta_users = {1.0};
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.beta_w = 0.0;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
}
