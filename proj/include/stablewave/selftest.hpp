#pragma once

// Self-test suite: the end-to-end criteria (anchor products, formula,
// normalization, closed/numeric amplitudes, series/inversion, PDE,
// Heisenberg reduction) plus the per-module invariants. Shared by the
// `selftest` command and the acceptance binary.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "stablewave/amplitude.hpp"
#include "stablewave/error.hpp"
#include "stablewave/packet.hpp"
#include "stablewave/pde.hpp"
#include "stablewave/quadrature.hpp"
#include "stablewave/special.hpp"
#include "stablewave/stable.hpp"
#include "stablewave/uncertainty.hpp"

namespace stablewave::selftest {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Outcome {
  bool passed;
  std::string detail;
};

inline std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

/// Runs one check, turning a library error into a failure.
inline CheckResult run_check(const std::string& name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r{name, false, "", 0.0};
  try {
    const Outcome o = body();
    r.passed = o.passed;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.detail = std::string("threw: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// Fixed seed: every run draws the same points.
inline std::mt19937_64 rng(unsigned salt) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

inline Outcome anchor_products() {
  struct Case {
    double alpha, beta, c, expected;
  };
  const Case cases[] = {
      {2.0, 0.0, 1.0, 0.5},
      {2.0, 0.0, 5.0, 0.5},
      {1.0, 0.0, 1.0, 1.0 / std::numbers::sqrt2},
      {1.0, 0.0, 0.3, 1.0 / std::numbers::sqrt2},
      {0.5, -1.0, 1.0, std::sqrt(7.5)},
      {0.5, -1.0, 2.0, std::sqrt(7.5)},
  };
  double worst = 0.0;
  std::string detail;
  for (const auto& k : cases) {
    const WavePacket w(StableParams{k.alpha, k.beta, 0.0, k.c});
    const auto r = uncertainty_report(w);
    const double err = std::abs(r.product_numeric - k.expected);
    if (!(err <= worst)) worst = err;  // NaN sticks
    detail += fmt("a=%g c=%g: %.9f; ", k.alpha, k.c, r.product_numeric);
  }
  return {worst <= 1e-6, detail + fmt("worst |err| %.2e", worst)};
}

inline Outcome formula_consistency() {
  const double e1 = std::abs(product_formula(2.0) - 0.5);
  const double e2 = std::abs(product_formula(1.0) - 1.0 / std::numbers::sqrt2);
  const double e3 = std::abs(product_formula(0.5) - std::sqrt(7.5));
  bool finite = true;
  for (double a = 0.05; a <= 2.0; a += 0.01) finite = finite && std::isfinite(product_formula(a));
  const double p01 = product_formula(0.1);
  const double worst = std::max({e1, e2, e3});
  return {worst <= 1e-12 && finite && std::isfinite(product_formula(0.05)) && p01 > 1e9,
          fmt("anchor |err| %.2e; finite on [0.05, 2]: %s; f(0.1) = %.6e", worst, finite ? "yes" : "no", p01)};
}

inline Outcome normalization_grid() {
  double worst = 0.0;
  int n = 0;
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    const double beta = alpha == 0.5 ? -1.0 : (alpha == 1.5 ? 0.7 : 0.0);
    for (double c : {0.5, 1.0, 2.0}) {
      const double err = std::abs(norm_check(WavePacket(StableParams{alpha, beta, 0.0, c})) - 1.0);
      if (!(err <= worst)) worst = err;
      ++n;
    }
  }
  return {worst <= 1e-8, fmt("%d packets, worst |norm - 1| %.2e", n, worst)};
}

inline Outcome closed_vs_numeric_amplitude() {
  struct Case {
    StableParams p;
    AmplitudeMethod method;
    const char* label;
  };
  const Case cases[] = {
      {{2.0, 0.0, 0.4, 1.3}, AmplitudeMethod::ClosedGaussian, "gaussian"},
      {{1.0, 0.0, -0.7, 0.8}, AmplitudeMethod::ClosedCauchy, "cauchy"},
      {{0.5, -1.0, 0.2, 1.1}, AmplitudeMethod::ClosedLevy, "levy"},
  };
  double worst = 0.0;
  std::string detail;
  for (const auto& k : cases) {
    const WavePacket w(k.p);
    const AmplitudeEvaluator closed(w, k.method);
    const AmplitudeEvaluator numeric(w, AmplitudeMethod::NumericFT);
    std::vector<double> zs;
    if (k.method == AmplitudeMethod::ClosedLevy) {
      const double span = 12.0 * k.p.c * k.p.c;
      for (int i = 1; i <= 101; ++i) zs.push_back(k.p.m + span * i / 101.0);
    } else {
      const double s = k.p.c_prime();
      zs = linspace(k.p.m - 8.0 * s, k.p.m + 8.0 * s, 101);
    }
    double sup = 0.0;
    for (double z : zs) {
      const double d = std::abs(amplitude(closed, z) - amplitude(numeric, z));
      if (!(d <= sup)) sup = d;
    }
    if (!(sup <= worst)) worst = sup;
    detail += fmt("%s %.2e; ", k.label, sup);
  }
  return {worst <= 1e-6, detail + "sup-norm over 101 points each"};
}

inline Outcome series_vs_inversion() {
  double worst = 0.0;
  int fallbacks = 0;
  for (double alpha : {0.6, 0.75, 1.5, 1.8}) {
    for (double beta : {0.0, 0.5}) {
      const StableParams p{alpha, beta, 0.0, 1.0};
      for (double z : {0.25, 0.5, 1.0, 2.0, 5.0}) {
        const auto s = density_series_with_fallback(p, z);
        fallbacks += s.used_fallback ? 1 : 0;
        const double ref = density_numeric(p, z);
        const double rel = std::abs(s.value - ref) / std::abs(ref);
        if (!(rel <= worst)) worst = rel;
      }
    }
  }
  auto g = rng(5);
  // Inversion at -z against the series at +z with beta flipped; the
  // series side is independent of the quadrature wherever it converges.
  double sym = 0.0;
  int sym_fallbacks = 0;
  for (int i = 0; i < 50; ++i) {
    double alpha = uniform(g, 0.4, 1.95);
    if (std::abs(alpha - 1.0) < 0.02) alpha += 0.05;
    const double beta = uniform(g, -1.0, 1.0);
    const double z = uniform(g, 0.05, 4.0);
    const StableParams p{alpha, beta, 0.0, 1.0};
    const StableParams flipped{alpha, -beta, 0.0, 1.0};
    const auto s = density_series_with_fallback(flipped, z);
    sym_fallbacks += s.used_fallback ? 1 : 0;
    const double d = std::abs(density_numeric(p, -z) - s.value);
    if (!(d <= sym)) sym = d;
  }
  return {worst <= 1e-6 && sym <= 1e-8,
          fmt("40 points, worst rel err %.2e (%d via inversion fallback); symmetry worst %.2e over 50 draws "
              "(%d via fallback)",
              worst, fallbacks, sym, sym_fallbacks)};
}

inline Outcome pde_identity_and_convergence() {
  double analytic = 0.0;
  for (double alpha : {0.6, 1.0, 1.5, 2.0}) {
    for (double v : {-1.5, 0.5, 2.0}) {
      const WavePacket w(StableParams{alpha, 0.0, 0.8, 1.2}, v);
      const GridSpec g{-4.0, 4.0, 161, 0.7, 1e-4, default_exclusion_radius(w.params())};
      analytic = std::max(analytic, wave_residual(w, g).analytic.max_abs);
    }
  }
  double order = std::numeric_limits<double>::infinity();
  for (double alpha : {1.5, 2.0}) {
    const WavePacket w(StableParams{alpha, 0.0, 0.7, 1.0}, 2.0);
    const GridSpec g{-3.0, 3.0, 121, 0.3, 0.02, 0.5};
    order = std::min(order, fd_convergence_order(w, g).order);
  }
  const WavePacket cauchy(StableParams{1.0, 0.0, 1.0, 1.0}, 1.0);
  std::vector<Complex> ahead, behind;
  for (double x : linspace(-5.0, 5.0, 101)) {
    if (x == 0.0) continue;
    (x > 0.0 ? ahead : behind).push_back(heat_form_coefficient(cauchy, x, 0.0));
  }
  auto variance = [](const std::vector<Complex>& v) {
    Complex mean{};
    for (auto k : v) mean += k;
    mean /= static_cast<double>(v.size());
    double s = 0.0;
    for (auto k : v) s += std::norm(k - mean);
    return s / static_cast<double>(v.size());
  };
  const auto branches = cauchy_heat_branches(1.0, 1.0, 1.0);
  const double ahead_err = std::abs(ahead.front() - Complex{0.5, 0.5});
  const double branch_err = std::abs(branches.ahead - Complex{0.5, 0.5});
  const double var = std::max(variance(ahead), variance(behind));
  const bool ok = analytic <= 1e-12 && order >= 1.9 && var < 1e-12 && ahead_err < 1e-14 && branch_err < 1e-14;
  return {ok, fmt("analytic max %.2e; fd order %.4f; heat variance %.2e; kappa(y>0) = %.6g%+.6gi",
                  analytic, order, var, ahead.front().real(), ahead.front().imag())};
}

inline Outcome heisenberg_reduction() {
  const double sigma0 = 0.7, tau = 1.3;
  const WavePacket w(heisenberg_params(sigma0, tau));
  auto g = rng(7);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = uniform(g, -3.0, 3.0);
    worst = std::max(worst, std::abs(psi0(w, x) - heisenberg_wave(sigma0, tau, x)));
  }
  const DeBroglieContext ctx{6.62607015e-34, 1.0};
  const double dx = delta_x_numeric(w);
  const auto dz = delta_z_numeric(AmplitudeEvaluator(w, AmplitudeMethod::NumericFT));
  const double dp = de_broglie(z_to_sigma(dz.value), ctx);
  const double target = ctx.h / (4.0 * std::numbers::pi);
  const double rel = std::abs(dx * dp - target) / target;
  return {worst <= 1e-12 && rel <= 1e-8,
          fmt("max |psi - H| %.2e over 50 x; dx dp / (h / 4pi) - 1 = %.2e", worst, rel)};
}

/// The seven end-to-end criteria, in order.
inline std::vector<CheckResult> criteria() {
  return {
      run_check("anchor products from the numeric pipeline", anchor_products),
      run_check("product formula anchors and small-alpha range", formula_consistency),
      run_check("packet normalization over 12 parameter sets", normalization_grid),
      run_check("closed-form vs numeric amplitudes", closed_vs_numeric_amplitude),
      run_check("series vs inversion densities and reflection", series_vs_inversion),
      run_check("wave equation, difference order, heat-form branches", pde_identity_and_convergence),
      run_check("Heisenberg packet and dx dp = h / 4pi", heisenberg_reduction),
  };
}

// ---------------------------------------------------------------------------
// Module invariants
// ---------------------------------------------------------------------------

inline Outcome gamma_recurrence() {
  auto g = rng(11);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = uniform(g, 0.05, 30.0);
    worst = std::max(worst, std::abs(gamma(x + 1.0) / (x * gamma(x)) - 1.0));
  }
  return {worst <= 1e-11, fmt("worst rel %.2e", worst)};
}

inline Outcome moment_integrals() {
  double worst = 0.0;
  for (int k : {0, 1, 2}) {
    for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
      auto f = [&](double y) { return std::pow(y, k) * std::exp(-std::pow(y, alpha)); };
      const double q = integrate_half_line(f, 0.0, +1, 1.0).value;
      worst = std::max(worst, std::abs(q / exp_power_moment(k, alpha) - 1.0));
    }
  }
  return {worst <= 1e-8, fmt("12 cases, worst rel %.2e", worst)};
}

inline Outcome char_fn_modulus() {
  auto g = rng(13);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    double alpha = uniform(g, 0.1, 2.0);
    if (std::abs(alpha - 1.0) < 1e-3) alpha = 1.2;
    const StableParams p{alpha, uniform(g, -1.0, 1.0), uniform(g, -3.0, 3.0), uniform(g, 0.2, 3.0)};
    const double z = uniform(g, -4.0, 4.0);
    const double expect = std::exp(-p.c * std::pow(std::abs(z), alpha));
    worst = std::max(worst, std::abs(std::abs(char_fn(p, z)) - expect));
  }
  return {worst <= 1e-15, fmt("worst %.2e", worst)};
}

inline Outcome density_mass() {
  double worst = 0.0;
  int n = 0;
  struct Case {
    double alpha, beta, c;
  };
  const Case cases[] = {{0.5, 0.0, 1.0}, {0.5, -1.0, 1.0}, {1.0, 0.0, 0.5}, {1.0, 0.0, 2.0},
                        {1.5, 0.0, 1.0}, {2.0, 0.0, 0.5}, {2.0, 0.0, 2.0}};
  const QuadratureConfig outer{1e-10, 1e-10};
  for (const auto& k : cases) {
    const StableParams p{k.alpha, k.beta, 0.0, k.c};
    auto f = [&](double z) { return density_numeric(p, z); };
    const double mass = integrate_real_line(f, 0.0, p.c_prime(), outer).value;
    worst = std::max(worst, std::abs(mass - 1.0));
    ++n;
  }
  return {worst <= 1e-6, fmt("%d laws, worst |mass - 1| %.2e", n, worst)};
}

inline Outcome packet_modulus() {
  auto g = rng(17);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double alpha = uniform(g, 0.3, 2.0);
    const double c = uniform(g, 0.3, 2.0);
    const double x = uniform(g, -3.0, 3.0), t = uniform(g, 0.0, 2.0), v = uniform(g, -2.0, 2.0);
    const WavePacket base(StableParams{alpha, 0.0, 0.0, c}, v);
    const WavePacket moved(StableParams{alpha, alpha == 1.0 ? 0.0 : 0.6, 4.0, c}, v);
    worst = std::max(worst, std::abs(std::abs(psi(base, x, t)) - std::abs(psi(moved, x, t))));
    worst = std::max(worst, std::abs(prob_density(base, x, t) - prob_density(base, x - v * t, 0.0)));
  }
  return {worst <= 1e-14, fmt("worst %.2e", worst)};
}

inline Outcome norm_over_time() {
  const WavePacket w(StableParams{1.5, 0.0, 0.3, 0.8}, 1.7);
  const double n0 = norm_at_time(w, 0.0);
  double worst = 0.0;
  for (double t : {0.5, 1.0, 10.0}) worst = std::max(worst, std::abs(norm_at_time(w, t) - n0));
  return {worst <= 1e-8, fmt("worst drift %.2e", worst)};
}

inline Outcome amplitude_shape() {
  auto g = rng(19);
  double odd = 0.0, negative = 0.0;
  const WavePacket sym(StableParams{1.5, 0.0, 0.6, 1.0});
  const AmplitudeEvaluator numeric(sym, AmplitudeMethod::NumericFT);
  for (int i = 0; i < 20; ++i) {
    const double u = uniform(g, 0.0, 6.0);
    const double a = amplitude(numeric, 0.6 + u), b = amplitude(numeric, 0.6 - u);
    odd = std::max(odd, std::abs(a - b));
    negative = std::max(negative, -std::min(a, 0.0));
  }
  const AmplitudeEvaluator closed[] = {
      {WavePacket(StableParams{2.0, 0.0, 0.0, 1.0}), AmplitudeMethod::ClosedGaussian},
      {WavePacket(StableParams{1.0, 0.0, 0.0, 1.0}), AmplitudeMethod::ClosedCauchy},
      {WavePacket(StableParams{0.5, -1.0, 0.0, 1.0}), AmplitudeMethod::ClosedLevy},
  };
  for (const auto& e : closed) {
    for (double z : linspace(-10.0, 10.0, 81)) negative = std::max(negative, -std::min(amplitude(e, z), 0.0));
  }
  // rounding leaves numeric tails a few ulps below zero
  return {odd <= 1e-10 && negative <= 1e-14, fmt("evenness %.2e; most negative %.2e", odd, negative)};
}

inline Outcome square_norms() {
  const double cauchy =
      square_norm_check(AmplitudeEvaluator(WavePacket(StableParams{1.0, 0.0, 0.0, 2.0}), AmplitudeMethod::ClosedCauchy));
  const double levy =
      square_norm_check(AmplitudeEvaluator(WavePacket(StableParams{0.5, -1.0, 0.0, 1.5}), AmplitudeMethod::ClosedLevy));
  const double numeric =
      square_norm_check(AmplitudeEvaluator(WavePacket(StableParams{1.5, 0.0, 0.0, 1.0}), AmplitudeMethod::NumericFT));
  auto f = [](double y) { return 1.0 / ((1.0 + y * y) * (1.0 + y * y)); };
  const double reduction = std::abs(integrate(f, 0.0, 10.0).value - cauchy_square_antiderivative(10.0));
  const bool ok = std::abs(cauchy - 1.0) <= 1e-8 && std::abs(levy - 1.0) <= 1e-8 &&
                  std::abs(numeric - 1.0) <= 1e-6 && reduction <= 1e-10;
  return {ok, fmt("cauchy %.12f, levy %.12f, numeric %.12f, reduction formula %.2e", cauchy, levy, numeric,
                  reduction)};
}

inline Outcome product_invariance() {
  double spread = 0.0, location = 0.0;
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double c : {0.25, 1.0, 4.0}) {
      const double p = uncertainty_report(WavePacket(StableParams{alpha, 0.0, 0.0, c})).product_numeric;
      lo = std::min(lo, p);
      hi = std::max(hi, p);
      if (!std::isfinite(p)) hi = std::numeric_limits<double>::infinity();
    }
    spread = std::max(spread, hi - lo);
  }
  const auto a = uncertainty_report(WavePacket(StableParams{1.0, 0.0, 0.0, 0.7}));
  const auto b = uncertainty_report(WavePacket(StableParams{1.0, 0.0, 10.0, 0.7}));
  location = std::abs(a.product_numeric - b.product_numeric);
  const bool monotone = product_formula(0.25) > product_formula(0.5) && product_formula(0.5) > product_formula(1.0) &&
                        product_formula(1.0) > product_formula(2.0) && product_formula(0.1) > 1e9;
  return {spread <= 1e-6 && location <= 1e-6 && monotone,
          fmt("scale spread %.2e; location shift %.2e; monotone %s", spread, location, monotone ? "yes" : "no")};
}

inline Outcome pde_identities() {
  double advection = 0.0, consistency = 0.0;
  for (double alpha : {0.6, 1.0, 1.5, 2.0}) {
    const WavePacket w(StableParams{alpha, 0.0, 0.9, 1.1}, 1.3);
    for (double x : linspace(-3.0, 3.0, 61)) {
      const double t = 0.4;
      if (std::abs(x - w.v() * t) < default_exclusion_radius(w.params())) continue;
      const Complex ut = dpsi_dt(w, x, t), ux = dpsi_dx(w, x, t), uxx = d2psi_dx2(w, x, t);
      advection = std::max(advection, std::abs(ut + w.v() * ux));
      const Complex k = heat_form_coefficient(w, x, t);
      consistency = std::max(consistency, std::abs(k * uxx - ut) / std::max(std::abs(ut), 1e-300));
    }
  }
  return {advection <= 1e-14 && consistency <= 1e-10,
          fmt("advection %.2e; kappa psi_xx vs psi_t rel %.2e", advection, consistency)};
}

inline std::vector<CheckResult> invariants() {
  return {
      run_check("gamma recurrence", gamma_recurrence),
      run_check("exp-power moment integrals", moment_integrals),
      run_check("characteristic function modulus", char_fn_modulus),
      run_check("numeric densities carry unit mass", density_mass),
      run_check("packet modulus ignores m and beta", packet_modulus),
      run_check("norm preserved in time", norm_over_time),
      run_check("amplitude evenness and positivity", amplitude_shape),
      run_check("amplitude square norms", square_norms),
      run_check("uncertainty product scale and location invariance", product_invariance),
      run_check("advection and heat-form identities", pde_identities),
  };
}

/// Criteria followed by invariants.
inline std::vector<CheckResult> run_all() {
  auto all = criteria();
  for (auto& r : invariants()) all.push_back(std::move(r));
  return all;
}

}  // namespace stablewave::selftest
