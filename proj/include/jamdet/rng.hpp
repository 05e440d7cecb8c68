#ifndef JAMDET_RNG_HPP
#define JAMDET_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace jamdet {

namespace detail {

// splitmix64 finalizer; full-avalanche mixing of a 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace detail

// Builds a stream key by folding counters (trial, block, role, ...) into a
// base seed. Every source of randomness in the library is keyed this way, so
// any trial/block can be regenerated in isolation and results do not depend
// on execution order or worker count.
constexpr std::uint64_t derive_key(std::uint64_t seed) noexcept {
  return detail::mix64(seed + detail::kGolden);
}

template <typename... Rest>
constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t part,
                                   Rest... rest) noexcept {
  return derive_key(detail::mix64(seed + detail::kGolden) ^
                        (part + detail::kGolden),
                    rest...);
}

// Stream roles used by the simulation; kept distinct so substreams never
// alias even when counter values coincide.
enum class StreamRole : std::uint64_t {
  jammer_coeffs = 0x101,
  block_draw = 0x102,
};

namespace detail {

// Marsaglia-Tsang ziggurat tables for the standard normal, 128 rectangles.
struct ZigguratTables {
  std::uint32_t kn[128];
  double wn[128];
  double fn[128];

  ZigguratTables() noexcept {
    const double m1 = 2147483648.0;  // 2^31
    double dn = 3.442619855899;
    double tn = dn;
    const double vn = 9.91256303526217e-3;
    const double q = vn / std::exp(-0.5 * dn * dn);
    kn[0] = static_cast<std::uint32_t>(dn / q * m1);
    kn[1] = 0;
    wn[0] = q / m1;
    wn[127] = dn / m1;
    fn[0] = 1.0;
    fn[127] = std::exp(-0.5 * dn * dn);
    for (int i = 126; i >= 1; --i) {
      dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
      kn[i + 1] = static_cast<std::uint32_t>(dn / tn * m1);
      tn = dn;
      fn[i] = std::exp(-0.5 * dn * dn);
      wn[i] = dn / m1;
    }
  }
};

inline const ZigguratTables& ziggurat() noexcept {
  static const ZigguratTables tables;
  return tables;
}

}  // namespace detail

// Counter-based uniform stream (splitmix64): output n is mix64(key + n*phi).
// Streams with different keys are statistically independent for Monte Carlo
// purposes, and a stream's output depends only on its key.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) noexcept : state_(key) {}

  RngStream(std::uint64_t seed, std::uint64_t trial, std::uint64_t block,
            StreamRole role) noexcept
      : RngStream(derive_key(seed, trial, block,
                             static_cast<std::uint64_t>(role))) {}

  std::uint64_t next_u64() noexcept {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

  // uniform on [0, 1), 53-bit resolution
  double next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform on (0, 1]; safe as a log() argument
  double next_uniform_pos() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // standard normal via the ziggurat (exact, rejection-based)
  double next_gaussian() noexcept {
    const auto& zig = detail::ziggurat();
    for (;;) {
      const std::int32_t hz = static_cast<std::int32_t>(next_u64());
      const std::uint32_t iz = static_cast<std::uint32_t>(hz) & 127u;
      if (static_cast<std::uint32_t>(hz < 0 ? -static_cast<std::int64_t>(hz)
                                            : hz) < zig.kn[iz]) {
        return hz * zig.wn[iz];
      }
      const double x = hz * zig.wn[iz];
      if (iz == 0) {
        // tail beyond r = 3.442619855899
        constexpr double r = 3.442619855899;
        for (;;) {
          const double xt = -std::log(next_uniform_pos()) / r;
          const double yt = -std::log(next_uniform_pos());
          if (yt + yt >= xt * xt) return hz > 0 ? r + xt : -(r + xt);
        }
      }
      if (zig.fn[iz] + next_uniform() * (zig.fn[iz - 1] - zig.fn[iz]) <
          std::exp(-0.5 * x * x)) {
        return x;
      }
    }
  }

  // circularly-symmetric complex Gaussian, unit total variance
  // (real and imaginary parts each N(0, 1/2))
  std::complex<double> next_cgaussian() noexcept {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {std::numbers::sqrt2 / 2.0 * re, std::numbers::sqrt2 / 2.0 * im};
  }

  // uniform integer in [0, n), n >= 1
  std::uint64_t next_below(std::uint64_t n) noexcept { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace jamdet

#endif  // JAMDET_RNG_HPP
