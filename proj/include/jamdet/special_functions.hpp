#ifndef JAMDET_SPECIAL_FUNCTIONS_HPP
#define JAMDET_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jamdet {

namespace detail {

inline constexpr double kGammaRelTol = 1e-14;
inline constexpr int kGammaMaxIter = 200000;

// Lower regularized gamma P(a,x) by power series; preferred for x < a+1.
inline double gamma_p_series(double a, double x) {
  if (x == 0.0) return 0.0;
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kGammaMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kGammaRelTol) {
      return sum * std::exp(a * std::log(x) - x - std::lgamma(a));
    }
  }
  throw std::runtime_error("gamma_p_series: no convergence");
}

// Upper regularized gamma Q(a,x) by modified Lentz continued fraction;
// preferred for x >= a+1.
inline double gamma_q_contfrac(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kGammaMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kGammaRelTol) {
      return h * std::exp(a * std::log(x) - x - std::lgamma(a));
    }
  }
  throw std::runtime_error("gamma_q_contfrac: no convergence");
}

inline double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace detail

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a).
// Series / continued-fraction split at x = a+1.
inline double gamma_p(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma_p: a must be > 0");
  if (!(x >= 0.0)) throw std::invalid_argument("gamma_p: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return detail::gamma_p_series(a, x);
  return 1.0 - detail::gamma_q_contfrac(a, x);
}

// Regularized upper incomplete gamma Q(a,x) = 1 - P(a,x).
inline double gamma_q(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma_q: a must be > 0");
  if (!(x >= 0.0)) throw std::invalid_argument("gamma_q: x must be >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
  return detail::gamma_q_contfrac(a, x);
}

// Gaussian upper-tail probability Q(x) = P(N(0,1) > x).
inline double q_function(double x) {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

// Inverse of q_function on (0,1): rational initial guess (Acklam) refined by
// Newton steps on the erfc-based tail.
inline double q_function_inverse(double y) {
  if (!(y > 0.0 && y < 1.0)) {
    throw std::invalid_argument("q_function_inverse: y must be in (0,1)");
  }
  // Acklam's approximation for the standard normal quantile of p = 1 - y,
  // i.e. the x with Q(x) = y.
  const double p = 1.0 - y;
  static constexpr double A[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double B[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double C[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double D[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
        ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q /
        (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
        ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
  }
  for (int it = 0; it < 3; ++it) {
    const double err = q_function(x) - y;
    const double pdf = detail::normal_pdf(x);
    if (pdf <= 0.0) break;
    x += err / pdf;
  }
  return x;
}

// Inverse of P(a, .) in x: P(a, gamma_p_inverse(a, y)) = y.
// Wilson-Hilferty initial guess, then Newton with a bisection safeguard.
inline double gamma_p_inverse(double a, double y) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma_p_inverse: a must be > 0");
  if (!(y >= 0.0 && y < 1.0)) {
    throw std::invalid_argument("gamma_p_inverse: y must be in [0,1)");
  }
  if (y == 0.0) return 0.0;

  // Wilson-Hilferty: P(a,x) ~ Phi(z) with z = 3 sqrt(a) ((x/a)^(1/3) - 1 + 1/(9a))
  const double z = -q_function_inverse(y);
  const double t = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
  double x = a * t * t * t;
  if (!(x > 0.0) || !std::isfinite(x)) x = a * 0.5;

  double lo = 0.0;
  double hi = std::max(x * 8.0, a + 32.0 * std::sqrt(a) + 32.0);
  while (gamma_p(a, hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw std::runtime_error("gamma_p_inverse: bracket expansion failed");
    }
  }
  if (x <= lo || x >= hi) x = 0.5 * (lo + hi);

  const double log_gamma_a = std::lgamma(a);
  for (int it = 0; it < 200; ++it) {
    const double f = gamma_p(a, x) - y;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double dfdx = std::exp((a - 1.0) * std::log(x) - x - log_gamma_a);
    double step = 0.0;
    bool newton_ok = dfdx > 0.0 && std::isfinite(dfdx);
    if (newton_ok) {
      step = f / dfdx;
      const double x_new = x - step;
      newton_ok = x_new > lo && x_new < hi;
      if (newton_ok) {
        if (std::abs(step) <= 1e-14 * std::max(x, 1.0)) return x_new;
        x = x_new;
      }
    }
    if (!newton_ok) {
      const double x_new = 0.5 * (lo + hi);
      if (std::abs(x_new - x) <= 1e-14 * std::max(x, 1.0)) return x_new;
      x = x_new;
    }
  }
  return x;
}

// J(x) = x - ln(1+x) for x >= 0; strictly increasing and convex there.
inline double j_function(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("j_function: x must be >= 0");
  return x - std::log1p(x);
}

// Inverse of J on [0, inf): Newton with bisection safeguard, |J(x)-y| -> 0
// to absolute tolerance 1e-12 (better in practice).
inline double j_function_inverse(double y) {
  if (!(y >= 0.0)) throw std::invalid_argument("j_function_inverse: y must be >= 0");
  if (y == 0.0) return 0.0;

  // small y: J(x) ~ x^2/2; large y: J(x) ~ x - ln x
  double x = (y < 1.0) ? std::sqrt(2.0 * y) : y + std::log1p(y);
  double lo = 0.0;
  double hi = std::max(2.0 * x, 2.0);
  while (j_function(hi) < y) hi *= 2.0;
  if (x <= lo || x >= hi) x = 0.5 * (lo + hi);

  for (int it = 0; it < 200; ++it) {
    const double f = j_function(x) - y;
    if (std::abs(f) <= 1e-14 * (1.0 + y)) return x;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double dfdx = x / (1.0 + x);  // J'(x)
    double x_new = (dfdx > 0.0) ? x - f / dfdx : 0.5 * (lo + hi);
    if (!(x_new > lo && x_new < hi)) x_new = 0.5 * (lo + hi);
    if (std::abs(x_new - x) <= 1e-15 * std::max(x, 1.0)) return x_new;
    x = x_new;
  }
  return x;
}

}  // namespace jamdet

#endif  // JAMDET_SPECIAL_FUNCTIONS_HPP
