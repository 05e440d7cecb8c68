#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "jamdet/rng.hpp"

using namespace jamdet;

TEST_CASE("streams are reproducible from their key", "[rng]") {
  RngStream a(42, 7, 3, StreamRole::block_draw);
  RngStream b(42, 7, 3, StreamRole::block_draw);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct counters give distinct streams", "[rng]") {
  RngStream a(42, 7, 3, StreamRole::block_draw);
  RngStream b(42, 7, 4, StreamRole::block_draw);
  RngStream c(42, 8, 3, StreamRole::block_draw);
  RngStream d(42, 7, 3, StreamRole::jammer_coeffs);
  const std::uint64_t va = a.next_u64();
  REQUIRE(va != b.next_u64());
  REQUIRE(va != c.next_u64());
  REQUIRE(va != d.next_u64());
}

TEST_CASE("uniform draws live in [0,1)", "[rng]") {
  RngStream rng(derive_key(1));
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double v = rng.next_uniform_pos();
    REQUIRE(v > 0.0);
    REQUIRE(v <= 1.0);
  }
}

TEST_CASE("complex gaussian moments", "[rng]") {
  RngStream rng(derive_key(123));
  const int n = 200000;
  double sum_re = 0.0, sum_im = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> z = rng.next_cgaussian();
    sum_re += z.real();
    sum_im += z.imag();
    sum_sq += std::norm(z);
  }
  // |z|^2 ~ Exp(1): mean 1, so SE of the mean-square is 1/sqrt(n)
  REQUIRE(std::abs(sum_re / n) < 4.0 / std::sqrt(2.0 * n));
  REQUIRE(std::abs(sum_im / n) < 4.0 / std::sqrt(2.0 * n));
  REQUIRE(std::abs(sum_sq / n - 1.0) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("real gaussian moments", "[rng]") {
  RngStream rng(derive_key(77));
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.next_gaussian();
    sum += g;
    sum_sq += g * g;
  }
  REQUIRE(std::abs(sum / n) < 4.0 / std::sqrt(static_cast<double>(n)));
  // var of g^2 is 2 for N(0,1)
  REQUIRE(std::abs(sum_sq / n - 1.0) <
          4.0 * std::sqrt(2.0 / static_cast<double>(n)));
}
