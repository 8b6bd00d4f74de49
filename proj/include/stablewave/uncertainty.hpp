#pragma once

// Position and frequency spreads of the packet and their product.
//
//   (dx)^2 = (2c)^(-2/alpha) Gamma(3/alpha) / Gamma(1/alpha)
//   dz     = c^(1/alpha)
//   dx dz  = sqrt(2^(-2/alpha) Gamma(3/alpha) / Gamma(1/alpha))
//
// The numeric route integrates moments of |psi|^2 and of A(z)^2 directly.
// A(z)^2 decays like |z|^(-2(1+alpha)), so the second moment exists only
// for alpha > 1/2; at and below 1/2 the first absolute moment is used.

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "stablewave/amplitude.hpp"
#include "stablewave/error.hpp"
#include "stablewave/packet.hpp"
#include "stablewave/quadrature.hpp"
#include "stablewave/special.hpp"

namespace stablewave {

enum class MomentKind { SecondCentral, FirstAbsolute, Divergent };

inline std::string_view to_string(MomentKind k) {
  switch (k) {
    case MomentKind::SecondCentral: return "SecondCentral";
    case MomentKind::FirstAbsolute: return "FirstAbsolute";
    case MomentKind::Divergent: return "Divergent";
  }
  return "unknown";
}

/// Planck constant and mass in the caller's units.
struct DeBroglieContext {
  double h = 1.0;
  double mass = 1.0;

  void validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("DeBroglieContext: h must be positive");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("DeBroglieContext: mass must be positive");
  }
};

struct UncertaintyReport {
  StableParams params;
  double delta_x = 0.0;          // closed form
  double delta_x_numeric = 0.0;  // quadrature of x^2 |psi|^2
  double delta_z_formula = 0.0;  // c^(1/alpha)
  double delta_z_numeric = 0.0;  // NaN when the moment diverged
  MomentKind moment_kind = MomentKind::SecondCentral;
  double product_formula = 0.0;
  double product_numeric = 0.0;  // NaN when the moment diverged
};

struct MomentResult {
  double value;
  MomentKind kind;
};

inline void check_alpha_c(double alpha, double c, const char* who) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError(std::string(who) + ": alpha must lie in (0, 2]");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError(std::string(who) + ": c must be positive");
}

inline double delta_x(double alpha, double c) {
  check_alpha_c(alpha, c, "delta_x");
  const double log_sq = -2.0 / alpha * std::log(2.0 * c) + log_gamma(3.0 / alpha) - log_gamma(1.0 / alpha);
  return std::exp(0.5 * log_sq);
}

inline double delta_x_numeric(const WavePacket& w, const QuadratureConfig& q = {}) {
  const auto& p = w.params();
  const double scale = std::exp(-std::log(2.0 * p.c) / p.alpha);
  auto moment = [&](double x) { return x * x * std::norm(psi0(w, x)); };
  return std::sqrt(integrate_real_line(moment, 0.0, scale, q).value);
}

/// Moment kind implied by the tail of A(z)^2.
inline MomentKind moment_kind_for(double alpha) {
  return alpha > 0.5 ? MomentKind::SecondCentral : MomentKind::FirstAbsolute;
}

/// Spread of A(z)^2 about m: sqrt of the second central moment for
/// alpha > 1/2, the first absolute moment otherwise. A moment that fails to
/// converge numerically yields kind Divergent and a NaN value.
inline MomentResult delta_z_numeric(const AmplitudeEvaluator& e, const QuadratureConfig& q = {}) {
  const auto& p = e.packet().params();
  const MomentKind kind = moment_kind_for(p.alpha);
  auto integrand = [&](double z) {
    const double a = detail::amplitude_for_moment(e, z);
    if (a == 0.0) return 0.0;
    const double dz = std::abs(z - p.m);
    return (kind == MomentKind::SecondCentral ? dz * dz : dz) * a * a;
  };
  try {
    const double moment = integrate_real_line(integrand, p.m, p.c_prime(), q).value;
    return {kind == MomentKind::SecondCentral ? std::sqrt(moment) : moment, kind};
  } catch (const ToleranceNotMet&) {
    return {std::numeric_limits<double>::quiet_NaN(), MomentKind::Divergent};
  }
}

/// dx dz as a function of alpha alone, evaluated through log-gamma so that
/// small alpha does not overflow.
inline double product_formula(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("product_formula: alpha must lie in (0, 2]");
  const double log_sq = -2.0 / alpha * std::log(2.0) + log_gamma(3.0 / alpha) - log_gamma(1.0 / alpha);
  return std::exp(0.5 * log_sq);
}

/// All spreads for a packet; the numeric frequency spread comes from the
/// numerically transformed amplitude. With `numeric` false the numeric
/// fields are left NaN.
inline UncertaintyReport uncertainty_report(const WavePacket& w, const QuadratureConfig& q = {},
                                            bool numeric = true) {
  const auto& p = w.params();
  UncertaintyReport r;
  r.params = p;
  r.delta_x = delta_x(p.alpha, p.c);
  r.delta_z_formula = p.c_prime();
  r.product_formula = product_formula(p.alpha);
  r.moment_kind = moment_kind_for(p.alpha);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  r.delta_x_numeric = nan;
  r.delta_z_numeric = nan;
  r.product_numeric = nan;
  if (!numeric) return r;

  r.delta_x_numeric = delta_x_numeric(w, q);
  const AmplitudeEvaluator e(w, AmplitudeMethod::NumericFT, q);
  const auto dz = delta_z_numeric(e, q);
  r.delta_z_numeric = dz.value;
  r.moment_kind = dz.kind;
  r.product_numeric = r.delta_x_numeric * dz.value;
  return r;
}

/// Momentum spread from a frequency spread: dp = h d(sigma).
inline double de_broglie(double delta_sigma, const DeBroglieContext& ctx) {
  ctx.validate();
  return ctx.h * delta_sigma;
}

}  // namespace stablewave
