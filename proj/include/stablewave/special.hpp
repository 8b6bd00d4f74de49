#pragma once

// Scalar building blocks: gamma, log-gamma, the exponential-power moment
// integral and the complex type shared across the library.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "stablewave/error.hpp"

namespace stablewave {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// sgn with sgn(0) = 0.
template <typename T>
constexpr int sgn(T x) noexcept {
  return (T(0) < x) - (x < T(0));
}

namespace detail {

// Lanczos approximation, g = 607/128, 14 correction terms. Relative error
// of exp(result) is below 1e-15 for x > 0.
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr double kLanczosLead = 0.999999999999997092;
inline constexpr std::array<double, 14> kLanczosCoef = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

// sqrt(2*pi)
inline constexpr double kSqrtTwoPi = 2.5066282746310005024;

}  // namespace detail

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite");
  }
  const double t = x + detail::kLanczosG + 0.5;
  const double head = (x + 0.5) * std::log(t) - t;
  double ser = detail::kLanczosLead;
  double y = x;
  for (double c : detail::kLanczosCoef) {
    y += 1.0;
    ser += c / y;
  }
  return head + std::log(detail::kSqrtTwoPi * ser / x);
}

/// Gamma(x) for x > 0, via log_gamma. Overflows to +inf above x ~ 171.6.
inline double gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("gamma: argument must be positive and finite");
  }
  return std::exp(log_gamma(x));
}

/// Extended-precision ln Gamma for the series code, where individual terms
/// can exceed the final sum by many orders of magnitude. Stirling series
/// after shifting the argument to >= 16.
inline long double log_gamma_extended(long double x) {
  if (!(x > 0.0L) || !std::isfinite(x)) {
    throw DomainError("log_gamma_extended: argument must be positive and finite");
  }
  long double shift = 0.0L;
  long double prod = 1.0L;
  while (x < 16.0L) {
    prod *= x;
    x += 1.0L;
    if (prod > 1e4000L) {  // keep the product bounded
      shift += std::log(prod);
      prod = 1.0L;
    }
  }
  shift += std::log(prod);

  // B_{2k} / (2k (2k-1)) for k = 1..10
  static constexpr std::array<long double, 10> kStirling = {
      1.0L / 12.0L,
      -1.0L / 360.0L,
      1.0L / 1260.0L,
      -1.0L / 1680.0L,
      1.0L / 1188.0L,
      -691.0L / 360360.0L,
      1.0L / 156.0L,
      -3617.0L / 122400.0L,
      43867.0L / 244188.0L,
      -174611.0L / 125400.0L};
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  long double corr = 0.0L;
  long double pw = inv;
  for (long double b : kStirling) {
    corr += b * pw;
    pw *= inv2;
  }
  constexpr long double kHalfLogTwoPi = 0.918938533204672741780329736405617639861L;
  return (x - 0.5L) * std::log(x) - x + kHalfLogTwoPi + corr - shift;
}

/// Integral over [0, inf) of y^k exp(-y^alpha), which equals
/// Gamma((k+1)/alpha) / alpha.
inline double exp_power_moment(int k, double alpha) {
  if (k < 0) throw DomainError("exp_power_moment: k must be non-negative");
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw DomainError("exp_power_moment: alpha must lie in (0, 2]");
  }
  return std::exp(log_gamma((k + 1) / alpha) - std::log(alpha));
}

}  // namespace stablewave
