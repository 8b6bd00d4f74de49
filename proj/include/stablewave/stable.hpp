#pragma once

// The alpha-stable law: log characteristic function, density by the
// gamma-function series, and density by numerical Fourier inversion.
//
// Characteristic function convention (E exp(izX)):
//   log phi(z) = imz - c|z|^a [1 + i b sgn(z) tan(pi a / 2)]        a != 1
//   log phi(z) = imz - c|z|   [1 + i b sgn(z) (2/pi) ln|z|]         a == 1
// Under this convention b = -1 with a < 1 puts all mass on (m, inf).

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "stablewave/error.hpp"
#include "stablewave/quadrature.hpp"
#include "stablewave/special.hpp"

namespace stablewave {

struct StableParams {
  double alpha = 2.0;
  double beta = 0.0;
  double m = 0.0;
  double c = 1.0;

  void validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("StableParams: alpha must lie in (0, 2]");
    if (!(std::abs(beta) <= 1.0)) throw DomainError("StableParams: |beta| must be <= 1");
    if (!std::isfinite(m)) throw DomainError("StableParams: m must be finite");
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("StableParams: c must be positive");
  }

  /// Scale parameter c' = c^(1/alpha).
  double c_prime() const { return std::exp(std::log(c) / alpha); }

  /// True on the alpha = 1, beta != 0 branch, which carries the log term.
  bool log_branch() const { return alpha == 1.0 && beta != 0.0; }
};

/// tan(pi*alpha/2), with the alpha = 2 value pinned to exactly zero.
inline double skew_tangent(double alpha) {
  if (alpha == 2.0) return 0.0;
  return std::tan(std::numbers::pi * alpha / 2.0);
}

namespace detail {

// log phi(side * s) continued to complex s in the right half-plane.
// side = +1 covers the positive real axis, side = -1 the negative one.
inline Complex log_cf_branch(const StableParams& p, int side, Complex s) {
  const double sd = side;
  if (p.alpha == 1.0) {
    const Complex skew = p.beta == 0.0 ? Complex{0.0}
                                       : kI * (sd * p.beta * (2.0 / std::numbers::pi)) * std::log(s);
    return kI * (sd * p.m) * s - p.c * s * (1.0 + skew);
  }
  const Complex kappa{p.c, sd * p.c * p.beta * skew_tangent(p.alpha)};
  const Complex spow = s == Complex{0.0} ? Complex{0.0} : std::exp(p.alpha * std::log(s));
  return kI * (sd * p.m) * s - kappa * spow;
}

}  // namespace detail

/// Log characteristic function at real z.
inline Complex log_char_fn(const StableParams& p, double z) {
  p.validate();
  if (z == 0.0) return {0.0, 0.0};
  const double az = std::abs(z);
  const int side = sgn(z);
  if (p.alpha == 1.0) {
    const double skew = side * p.beta * (2.0 / std::numbers::pi) * std::log(az);
    return {-p.c * az, p.m * z - p.c * az * skew};
  }
  const double mag = p.c * std::pow(az, p.alpha);
  return {-mag, p.m * z - mag * side * p.beta * skew_tangent(p.alpha)};
}

/// Characteristic function at real z; modulus exp(-c|z|^alpha).
inline Complex char_fn(const StableParams& p, double z) { return std::exp(log_char_fn(p, z)); }

/// (u - m) / c'.
inline double standardize(double u, const StableParams& p) {
  p.validate();
  return (u - p.m) / p.c_prime();
}

// ---------------------------------------------------------------------------
// Numerical Fourier inversion
// ---------------------------------------------------------------------------

struct InversionResult {
  Complex value;  // integral of phi(x) exp(-izx) over the real line
  double error = 0.0;
  double rounding = 0.0;  // floor set by cancellation in the oscillating sum
};

namespace detail {

// Angle of the integration ray for one half-line. Rotating off the real
// axis turns the oscillatory kernel into exponential decay; the angle is
// half the largest one for which both exp(-kappa s^alpha) and the kernel
// still decay. The log branch (alpha = 1, beta != 0) stays on the axis.
inline double inversion_ray_angle(const StableParams& p, int side, double w) {
  if (w == 0.0 || p.log_branch()) return 0.0;
  const double theta = std::atan(p.beta * skew_tangent(p.alpha));
  const int dir = -side * sgn(w);
  const double limit = (std::numbers::pi / 2.0 - dir * side * theta) / p.alpha;
  return dir * 0.5 * std::min(std::numbers::pi / 2.0, limit);
}

// Integral over s in [0, inf) of exp(log phi(side*s) - i side z s), taken
// along the ray s = r exp(i angle). `log_scale` is added to the exponent.
inline InversionResult half_line_inversion(const StableParams& p, int side, double z,
                                           double log_scale, const QuadratureConfig& q) {
  const double w = z - p.m;
  const double phi = inversion_ray_angle(p, side, w);
  const Complex dir = std::polar(1.0, phi);
  auto exponent = [&](double r) {
    const Complex s = r * dir;
    return log_cf_branch(p, side, s) - kI * (side * z) * s + log_scale;
  };
  auto integrand = [&](double r) -> Complex {
    const Complex e = exponent(r);
    if (e.real() < -745.0) return {0.0, 0.0};
    return std::exp(e) * dir;
  };

  // Truncation radius: the modulus exp(Re exponent) is decreasing in r.
  const double log_cut = std::log(q.truncation_epsilon) + log_scale;
  const double x_scale = std::exp(-std::log(p.c) / p.alpha);
  const double r0 = w == 0.0 ? x_scale : std::min(x_scale, 1.0 / std::abs(w));
  double hi = r0;
  int guard = 0;
  while (exponent(hi).real() > log_cut) {
    hi *= 2.0;
    if (++guard > 2000 || !std::isfinite(hi)) {
      throw ToleranceNotMet("density_numeric: integrand does not decay", q.truncation_epsilon);
    }
  }
  double lo = hi / 2.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (exponent(mid).real() > log_cut ? lo : hi) = mid;
  }
  const double cutoff = hi;

  // Geometric panels from r0, then capped at a quarter period of the
  // kernel's oscillation along the ray.
  const double freq = std::abs(w * std::cos(phi));
  const double cap = freq > 0.0 ? std::numbers::pi / (4.0 * freq) : std::numeric_limits<double>::infinity();
  std::vector<double> breaks{0.0};
  double edge = std::min(r0, cutoff);
  while (true) {
    const double start = breaks.back();
    const double width = edge - start;
    const int pieces = std::isfinite(cap) ? std::max(1, static_cast<int>(std::ceil(width / cap))) : 1;
    if (static_cast<int>(breaks.size()) + pieces > q.max_panels) {
      throw ToleranceNotMet("density_numeric: oscillation needs more panels than allowed",
                            std::numeric_limits<double>::infinity());
    }
    for (int j = 1; j < pieces; ++j) breaks.push_back(start + width * j / pieces);
    breaks.push_back(edge);
    if (edge >= cutoff) break;
    edge = std::min(2.0 * edge, cutoff);
  }
  auto res = integrate_panels(integrand, std::span<const double>(breaks), q);
  // Panels span at most a quarter period, so one Kronrod pass over |integrand|
  // is enough to bound the magnitude that cancels.
  auto modulus = [&](double r) { return std::abs(integrand(r)); };
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    mass += detail::gauss_kronrod15<double>(modulus, breaks[i], breaks[i + 1]).value;
  }
  return {res.value, res.error, 8.0 * std::numeric_limits<double>::epsilon() * mass};
}

}  // namespace detail

/// Integral of exp(log_scale) * phi(x) * exp(-izx) over the real line,
/// as the sum of two independently integrated half-lines.
inline InversionResult inverse_transform(const StableParams& p, double z, const QuadratureConfig& q,
                                         double log_scale = 0.0) {
  p.validate();
  q.validate();
  const auto pos = detail::half_line_inversion(p, +1, z, log_scale, q);
  const auto neg = detail::half_line_inversion(p, -1, z, log_scale, q);
  return {pos.value + neg.value, pos.error + neg.error, pos.rounding + neg.rounding};
}

/// True probability density at z: (1/2pi) * integral of phi(u) exp(-iuz) du.
inline double density_numeric(const StableParams& p, double z, const QuadratureConfig& q = {}) {
  const auto inv = inverse_transform(p, z, q);
  const double scale = 1.0 / (2.0 * std::numbers::pi);
  const double residue = std::abs(inv.value.imag()) * scale;
  if (residue >= 10.0 * q.abs_tol) {
    throw ImaginaryResidue("density_numeric: transform is not real", residue);
  }
  return inv.value.real() * scale;
}

// ---------------------------------------------------------------------------
// Series expansion
// ---------------------------------------------------------------------------

struct SeriesConfig {
  /// A term's contribution below this (once terms decrease) ends the sum.
  double abs_tol = 1e-15;
  int max_terms = 400;
  /// Largest tolerated relative error from cancellation between terms.
  double max_cancellation_error = 1e-7;
};

/// sqrt(2 pi) times the true density: the convention in which the amplitude
/// is A_o times the density with no further constant.
inline constexpr double kPaperDensityFactor = detail::kSqrtTwoPi;

/// Standard (m = 0, c = 1) stable density at z > 0, in the sqrt(2 pi)-scaled
/// convention, from the gamma-function expansions
///   1 < a < 2:  (1/z) sqrt(2/pi) sum_k G(1 + k/a)/k! (-x)^k      sin(k pi (g - a) / (2a))
///   0 < a < 1:  (1/z) sqrt(2/pi) sum_k G(1 + k a)/k! (-x^(-a))^k sin(k pi (g - a) / 2)
/// The expansions are written in the skewness g of the exp(-|z|^a e^{i pi g/2 sgn z})
/// form; b maps onto it as g = 2 theta / pi, x = cos(theta)^(1/a) z, with
/// tan(theta) = b tan(pi a / 2). For b = 0 this is g = 0, x = z.
inline double density_series(const StableParams& p, double z, const SeriesConfig& sc = {}) {
  p.validate();
  if (p.m != 0.0 || p.c != 1.0) throw DomainError("density_series: requires m = 0 and c = 1");
  if (p.alpha == 1.0 || p.alpha == 2.0) {
    throw DomainError("density_series: alpha must lie in (0, 1) or (1, 2)");
  }
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("density_series: z must be positive");

  using ld = long double;
  constexpr ld kPi = 3.141592653589793238462643383279502884L;
  const ld a = p.alpha;
  const ld theta = std::atan(static_cast<ld>(p.beta) * std::tan(kPi * a / 2.0L));
  const ld g = 2.0L * theta / kPi;
  const ld x = std::pow(std::cos(theta), 1.0L / a) * static_cast<ld>(z);
  const bool heavy = a < 1.0L;
  const ld log_base = heavy ? -a * std::log(x) : std::log(x);
  const ld prefactor = std::sqrt(2.0L / kPi) / static_cast<ld>(z);
  const ld log_prefactor = std::log(prefactor);
  const ld phase = heavy ? kPi * (g - a) / 2.0L : kPi * (g - a) / (2.0L * a);

  ld sum = 0.0L;
  ld prev = std::numeric_limits<ld>::infinity();
  ld rounding_sq = 0.0L;  // root-sum-square estimate of the sum's rounding error
  for (int k = 1; k <= sc.max_terms; ++k) {
    const ld kk = k;
    const ld lg = log_gamma_extended(heavy ? 1.0L + kk * a : 1.0L + kk / a) -
                  log_gamma_extended(kk + 1.0L);
    const ld log_env = lg + kk * log_base;
    const ld contribution = std::exp(log_env + log_prefactor);
    const ld sign = (k % 2 == 0) ? 1.0L : -1.0L;
    sum += sign * std::exp(log_env) * std::sin(kk * phase);
    const ld term_error = contribution * (32.0L + std::abs(log_env) + std::abs(kk * phase)) * LDBL_EPSILON;
    rounding_sq += term_error * term_error;
    if (!std::isfinite(sum)) throw ConvergenceError("density_series: terms overflow");
    if (contribution < static_cast<ld>(sc.abs_tol) && contribution < prev) {
      const ld value = prefactor * sum;
      if (std::sqrt(rounding_sq) > std::max(static_cast<ld>(sc.max_cancellation_error) * std::abs(value),
                              static_cast<ld>(sc.abs_tol))) {
        throw ConvergenceError("density_series: cancellation between terms destroys precision");
      }
      return static_cast<double>(value);
    }
    prev = contribution;
  }
  throw ConvergenceError("density_series: max_terms reached before terms became negligible");
}

/// Standard density at any z != 0 using s(-z; b) = s(z; -b).
inline double density_reflect(const StableParams& p, double z, const SeriesConfig& sc = {}) {
  if (z < 0.0) {
    StableParams flipped = p;
    flipped.beta = -p.beta;
    return density_series(flipped, -z, sc);
  }
  return density_series(p, z, sc);
}

struct DensityValue {
  double value;        // true probability density
  bool used_fallback;  // series failed; value came from numerical inversion
};

/// True density at u for any (m, c): series through standardization when it
/// converges, numerical inversion otherwise.
inline DensityValue density_series_with_fallback(const StableParams& p, double u,
                                                 const QuadratureConfig& q = {},
                                                 const SeriesConfig& sc = {}) {
  p.validate();
  const double cp = p.c_prime();
  const double z = (u - p.m) / cp;
  if (p.alpha != 1.0 && p.alpha != 2.0 && z != 0.0) {
    try {
      const StableParams standard{p.alpha, p.beta, 0.0, 1.0};
      return {density_reflect(standard, z, sc) / (kPaperDensityFactor * cp), false};
    } catch (const ConvergenceError&) {
    }
  }
  return {density_numeric(p, u, q), true};
}

}  // namespace stablewave
