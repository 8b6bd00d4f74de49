#pragma once

// Differential structure of the translating packet psi(x - vt) with beta = 0.
// With y = x - vt and F(y) = im - c alpha |y|^(alpha-1) sgn y:
//
//   psi_x  = F psi
//   psi_xx = (F^2 - c alpha (alpha-1) |y|^(alpha-2)) psi
//   psi_t  = -v psi_x,   psi_tt = v^2 psi_xx
//
// so psi_tt = v^2 psi_xx (a vibrating string) and, wherever psi_xx != 0,
// psi_t = kappa psi_xx with kappa = -v F / (F^2 - c alpha (alpha-1)|y|^(alpha-2)).
// Only alpha = 1 makes kappa constant, and then only on each side of y = 0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stablewave/error.hpp"
#include "stablewave/packet.hpp"
#include "stablewave/quadrature.hpp"
#include "stablewave/special.hpp"
#include "stablewave/uncertainty.hpp"

namespace stablewave {

struct GridSpec {
  double x_min = -3.0;
  double x_max = 3.0;
  int n_points = 121;
  double t = 0.0;
  double fd_step = 1e-3;
  /// Half-width of the band around x = vt that the checks skip.
  double exclusion_radius = 0.0;

  void validate() const {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
      throw DomainError("GridSpec: need finite x_min < x_max");
    }
    if (n_points < 3) throw DomainError("GridSpec: n_points must be >= 3");
    if (!std::isfinite(t)) throw DomainError("GridSpec: t must be finite");
    if (!(fd_step > 0.0) || !(fd_step < x_max - x_min)) {
      throw DomainError("GridSpec: fd_step must be positive and smaller than the grid span");
    }
    if (!(exclusion_radius >= 0.0)) throw DomainError("GridSpec: exclusion_radius must be >= 0");
  }
};

/// 1e-3 (2c)^(-1/alpha): a thousandth of the packet's width.
inline double default_exclusion_radius(const StableParams& p) {
  return 1e-3 * std::exp(-std::log(2.0 * p.c) / p.alpha);
}

struct ResidualReport {
  double max_abs = 0.0;
  double rms = 0.0;
  int n_evaluated = 0;
  int n_excluded = 0;
  /// max_abs over the largest magnitude of the reference quantity.
  double max_rel = 0.0;
};

namespace detail {

inline void require_symmetric(const WavePacket& w, const char* who) {
  if (w.params().beta != 0.0) throw DomainError(std::string(who) + ": requires beta = 0");
}

inline void check_band(double y, double radius, const char* who) {
  if (std::abs(y) < radius) throw SingularityError(std::string(who) + ": point lies inside the exclusion band");
}

// F(y) = im - c alpha |y|^(alpha-1) sgn y
inline Complex log_slope(const StableParams& p, double y) {
  const double power = p.alpha == 1.0 ? 1.0 : std::pow(std::abs(y), p.alpha - 1.0);
  return {-p.c * p.alpha * power * sgn(y), p.m};
}

// F^2 - c alpha (alpha-1) |y|^(alpha-2)
inline Complex curvature_factor(const StableParams& p, double y) {
  const Complex f = log_slope(p, y);
  if (p.alpha == 1.0) return f * f;
  const double power = p.alpha == 2.0 ? 1.0 : std::pow(std::abs(y), p.alpha - 2.0);
  return f * f - p.c * p.alpha * (p.alpha - 1.0) * power;
}

// Accumulates |residual| and the reference magnitude into a report.
class ReportBuilder {
public:
  void skip() { ++report_.n_excluded; }
  void add(double residual, double reference) {
    report_.max_abs = std::max(report_.max_abs, residual);
    sum_sq_ += residual * residual;
    ref_max_ = std::max(ref_max_, reference);
    ++report_.n_evaluated;
  }
  ResidualReport finish() const {
    ResidualReport r = report_;
    if (r.n_evaluated > 0) r.rms = std::sqrt(sum_sq_ / r.n_evaluated);
    r.max_rel = ref_max_ > 0.0 ? r.max_abs / ref_max_ : r.max_abs;
    return r;
  }

private:
  ResidualReport report_;
  double sum_sq_ = 0.0;
  double ref_max_ = 0.0;
};

}  // namespace detail

/// First space derivative. The center y = 0 is singular for alpha <= 1.
inline Complex dpsi_dx(const WavePacket& w, double x, double t, double exclusion_radius = 0.0) {
  detail::require_symmetric(w, "dpsi_dx");
  const double y = x - w.v() * t;
  detail::check_band(y, exclusion_radius, "dpsi_dx");
  if (y == 0.0 && w.params().alpha <= 1.0) throw SingularityError("dpsi_dx: derivative undefined at x = vt for alpha <= 1");
  return detail::log_slope(w.params(), y) * psi(w, x, t);
}

/// Second space derivative. The center is singular for alpha < 2.
inline Complex d2psi_dx2(const WavePacket& w, double x, double t, double exclusion_radius = 0.0) {
  detail::require_symmetric(w, "d2psi_dx2");
  const double y = x - w.v() * t;
  detail::check_band(y, exclusion_radius, "d2psi_dx2");
  if (y == 0.0 && w.params().alpha < 2.0) throw SingularityError("d2psi_dx2: derivative undefined at x = vt for alpha < 2");
  return detail::curvature_factor(w.params(), y) * psi(w, x, t);
}

inline Complex dpsi_dt(const WavePacket& w, double x, double t, double exclusion_radius = 0.0) {
  return -w.v() * dpsi_dx(w, x, t, exclusion_radius);
}

inline Complex d2psi_dt2(const WavePacket& w, double x, double t, double exclusion_radius = 0.0) {
  return w.v() * w.v() * d2psi_dx2(w, x, t, exclusion_radius);
}

struct WaveResidual {
  ResidualReport analytic;
  ResidualReport finite_difference;
};

/// psi_tt - v^2 psi_xx on the grid at time g.t, from the analytic
/// derivatives and from three-point central differences with step
/// g.fd_step in both x and t. For the difference route a point is also
/// skipped when its stencil reaches into the band.
inline WaveResidual wave_residual(const WavePacket& w, const GridSpec& g) {
  detail::require_symmetric(w, "wave_residual");
  g.validate();
  const double v = w.v();
  const double h = g.fd_step;
  const double reach = std::max(1.0, std::abs(v)) * h;
  const bool singular_center = w.params().alpha < 2.0;
  detail::ReportBuilder analytic, fd;
  for (double x : linspace(g.x_min, g.x_max, g.n_points)) {
    const double y = x - v * g.t;
    if (std::abs(y) < g.exclusion_radius || (singular_center && y == 0.0)) {
      analytic.skip();
    } else {
      const Complex xx = d2psi_dx2(w, x, g.t);
      analytic.add(std::abs(d2psi_dt2(w, x, g.t) - v * v * xx), std::abs(v * v * xx));
    }
    if (std::abs(y) < g.exclusion_radius + reach || (singular_center && std::abs(y) <= reach)) {
      fd.skip();
      continue;
    }
    const Complex c0 = psi(w, x, g.t);
    const Complex tt = (psi(w, x, g.t + h) - 2.0 * c0 + psi(w, x, g.t - h)) / (h * h);
    const Complex xx = (psi(w, x + h, g.t) - 2.0 * c0 + psi(w, x - h, g.t)) / (h * h);
    fd.add(std::abs(tt - v * v * xx), std::abs(v * v * xx));
  }
  return {analytic.finish(), fd.finish()};
}

struct ConvergenceReport {
  ResidualReport coarse;
  ResidualReport fine;  // step halved
  double order = 0.0;   // log2(coarse.max_abs / fine.max_abs)
};

/// Observed order of the difference residual under one step halving. The
/// band is widened to cover the coarse stencil so both runs see the same points.
inline ConvergenceReport fd_convergence_order(const WavePacket& w, const GridSpec& g) {
  GridSpec coarse = g;
  coarse.exclusion_radius = g.exclusion_radius + std::max(1.0, std::abs(w.v())) * g.fd_step;
  GridSpec fine = coarse;
  fine.fd_step = 0.5 * g.fd_step;
  ConvergenceReport r;
  r.coarse = wave_residual(w, coarse).finite_difference;
  r.fine = wave_residual(w, fine).finite_difference;
  r.order = std::log2(r.coarse.max_abs / r.fine.max_abs);
  return r;
}

struct GradientCheck {
  ResidualReport first;   // dpsi_dx against the five-point difference
  ResidualReport second;  // d2psi_dx2 against the five-point difference
  /// Larger of the two relative sup-norm errors.
  double max_rel() const { return std::max(first.max_rel, second.max_rel); }
};

/// Analytic space derivatives against fourth-order central differences
/// with step g.fd_step, at time g.t.
inline GradientCheck fd_gradient_check(const WavePacket& w, const GridSpec& g) {
  detail::require_symmetric(w, "fd_gradient_check");
  g.validate();
  const double h = g.fd_step;
  const double reach = 2.0 * h;
  detail::ReportBuilder first, second;
  for (double x : linspace(g.x_min, g.x_max, g.n_points)) {
    const double y = x - w.v() * g.t;
    if (std::abs(y) < g.exclusion_radius + reach || (w.params().alpha < 2.0 && std::abs(y) <= reach)) {
      first.skip();
      second.skip();
      continue;
    }
    const Complex fm2 = psi(w, x - 2.0 * h, g.t), fm1 = psi(w, x - h, g.t), f0 = psi(w, x, g.t);
    const Complex fp1 = psi(w, x + h, g.t), fp2 = psi(w, x + 2.0 * h, g.t);
    const Complex d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    const Complex d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    const Complex a1 = dpsi_dx(w, x, g.t);
    const Complex a2 = d2psi_dx2(w, x, g.t);
    first.add(std::abs(d1 - a1), std::abs(a1));
    second.add(std::abs(d2 - a2), std::abs(a2));
  }
  return {first.finish(), second.finish()};
}

/// kappa(x, t) with psi_t = kappa psi_xx.
inline Complex heat_form_coefficient(const WavePacket& w, double x, double t, double exclusion_radius = 0.0) {
  detail::require_symmetric(w, "heat_form_coefficient");
  const auto& p = w.params();
  const double y = x - w.v() * t;
  detail::check_band(y, exclusion_radius, "heat_form_coefficient");
  if (y == 0.0 && p.alpha < 2.0) throw SingularityError("heat_form_coefficient: undefined at x = vt for alpha < 2");
  const Complex denom = detail::curvature_factor(p, y);
  if (denom == Complex{0.0, 0.0}) throw DivisionByZero("heat_form_coefficient: psi_xx vanishes at this point");
  return -w.v() * detail::log_slope(p, y) / denom;
}

struct CauchyHeatBranches {
  Complex ahead;   // y > 0: -v / (im - c)
  Complex behind;  // y < 0: -v / (im + c)
};

/// The two constant values of kappa for the Cauchy packet.
inline CauchyHeatBranches cauchy_heat_branches(double v, double m, double c) {
  if (!(c > 0.0)) throw DomainError("cauchy_heat_branches: c must be positive");
  return {-v / Complex{-c, m}, -v / Complex{c, m}};
}

/// Coefficient of psi_xx in i h psi_t = K psi_xx for the Cauchy packet on
/// y > 0 with v = E/p = h sigma / (2M): K = -(h^2 sigma / 2M)(m - ic)/(m^2 + c^2).
inline Complex schrodinger_form(const DeBroglieContext& ctx, double sigma, double m, double c) {
  ctx.validate();
  const double r2 = m * m + c * c;
  if (!(r2 > 0.0)) throw DomainError("schrodinger_form: m and c cannot both vanish");
  const double k = ctx.h * ctx.h * sigma / (2.0 * ctx.mass);
  return -k * Complex{m, -c} / r2;
}

}  // namespace stablewave
