#include <catch_amalgamated.hpp>

#include <cmath>

#include "stablewave/pde.hpp"

using namespace stablewave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("first derivative examples") {
  const WavePacket g(StableParams{2.0, 0.0, 0.0, 1.0});
  CHECK(near(dpsi_dx(g, 1.0, 0.0), -2.0 * psi(g, 1.0, 0.0), 1e-15));
  const WavePacket c(StableParams{1.0, 0.0, 0.0, 1.0});
  CHECK(near(dpsi_dx(c, 2.0, 0.0), -1.0 * psi(c, 2.0, 0.0), 1e-15));
  const WavePacket moving(StableParams{2.0, 0.0, 1.5, 1.0}, 0.8);
  CHECK(near(dpsi_dx(moving, 0.8 * 2.0, 2.0), kI * 1.5 * psi(moving, 1.6, 2.0), 1e-15));
}

TEST_CASE("singular points and the band") {
  const WavePacket w(StableParams{0.8, 0.0, 0.0, 1.0}, 1.0);
  CHECK_THROWS_AS(dpsi_dx(w, 1.0, 1.0), SingularityError);
  CHECK_THROWS_AS(d2psi_dx2(w, 1.0, 1.0), SingularityError);
  CHECK_THROWS_AS(dpsi_dx(w, 1.05, 1.0, 0.1), SingularityError);
  CHECK_NOTHROW(dpsi_dx(w, 1.5, 1.0, 0.1));
  const WavePacket smooth(StableParams{1.5, 0.0, 0.0, 1.0});
  CHECK_NOTHROW(dpsi_dx(smooth, 0.0, 0.0));
  CHECK_THROWS_AS(d2psi_dx2(smooth, 0.0, 0.0), SingularityError);
  CHECK_NOTHROW(d2psi_dx2(WavePacket(StableParams{2.0, 0.0, 0.0, 1.0}), 0.0, 0.0));
  CHECK_THROWS_AS(dpsi_dx(WavePacket(StableParams{1.5, 0.3, 0.0, 1.0}), 1.0, 0.0), DomainError);
}

TEST_CASE("second derivative of the Gaussian packet") {
  const WavePacket w(StableParams{2.0, 0.0, 0.0, 1.0});
  for (double x : {-1.0, 0.0, 0.7}) {
    CHECK(near(d2psi_dx2(w, x, 0.0), (4.0 * x * x - 2.0) * psi(w, x, 0.0), 1e-14));
  }
}

TEST_CASE("time derivatives follow the translation") {
  const WavePacket w(StableParams{1.5, 0.0, 0.4, 1.0}, -1.7);
  for (double x : {-2.0, 0.5, 2.5}) {
    CHECK(near(dpsi_dt(w, x, 0.3) + w.v() * dpsi_dx(w, x, 0.3), 0.0, 1e-15));
    CHECK(near(d2psi_dt2(w, x, 0.3), w.v() * w.v() * d2psi_dx2(w, x, 0.3), 1e-15));
  }
}

TEST_CASE("analytic wave residual vanishes") {
  for (double alpha : {0.6, 1.0, 1.5, 2.0}) {
    const WavePacket w(StableParams{alpha, 0.0, 0.8, 1.2}, 1.4);
    const GridSpec g{-4.0, 4.0, 161, 0.6, 1e-4, default_exclusion_radius(w.params())};
    const auto r = wave_residual(w, g);
    CHECK(r.analytic.max_abs <= 1e-12);
    CHECK(r.analytic.n_evaluated + r.analytic.n_excluded == g.n_points);
    CHECK(r.finite_difference.n_evaluated + r.finite_difference.n_excluded == g.n_points);
  }
}

TEST_CASE("difference residual converges at second order") {
  for (double alpha : {1.5, 2.0}) {
    const WavePacket w(StableParams{alpha, 0.0, 0.7, 1.0}, 2.0);
    const auto c = fd_convergence_order(w, GridSpec{-3.0, 3.0, 121, 0.3, 0.02, 0.5});
    INFO("alpha=" << alpha);
    CHECK(c.order >= 1.9);
    CHECK(c.coarse.n_evaluated == c.fine.n_evaluated);
  }
  // Halving the step on the Gaussian cuts the residual about fourfold.
  const WavePacket g(StableParams{2.0, 0.0, 0.0, 1.0}, 1.5);
  const auto c = fd_convergence_order(g, GridSpec{-3.0, 3.0, 121, 0.0, 0.005, 0.0});
  CHECK_THAT(c.coarse.max_abs / c.fine.max_abs, WithinRel(4.0, 0.02));
}

TEST_CASE("singular band produces a finite report") {
  const WavePacket w(StableParams{0.8, 0.0, 0.0, 1.0}, 1.0);
  const GridSpec g{-3.0, 3.0, 121, 0.0, 1e-4, default_exclusion_radius(w.params())};
  const auto r = wave_residual(w, g);
  CHECK(std::isfinite(r.finite_difference.max_abs));
  CHECK(r.finite_difference.n_excluded > 0);
  CHECK(r.analytic.n_excluded > 0);
}

TEST_CASE("gradient check") {
  struct Case {
    double alpha, tol;
  };
  for (auto k : {Case{2.0, 1e-8}, Case{1.5, 1e-6}, Case{1.2, 1e-6}, Case{0.6, 1e-4}, Case{0.9, 1e-4}}) {
    const WavePacket w(StableParams{k.alpha, 0.0, 0.5, 1.0});
    const GridSpec g{-3.0, 3.0, 121, 0.0, 1e-3, default_exclusion_radius(w.params())};
    INFO("alpha=" << k.alpha);
    CHECK(fd_gradient_check(w, g).max_rel() <= k.tol);
  }
}

TEST_CASE("GridSpec validation") {
  CHECK_THROWS_AS((GridSpec{1.0, 0.0, 10, 0.0, 1e-3, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((GridSpec{0.0, 1.0, 2, 0.0, 1e-3, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((GridSpec{0.0, 1.0, 10, 0.0, 0.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((GridSpec{0.0, 1.0, 10, 0.0, 1e-3, -1.0}.validate()), DomainError);
}

TEST_CASE("heat-form coefficient examples") {
  const WavePacket a(StableParams{1.0, 0.0, 1.0, 1.0}, 1.0);
  CHECK(near(heat_form_coefficient(a, 2.0, 0.0), Complex{0.5, 0.5}, 1e-15));
  const WavePacket b(StableParams{1.0, 0.0, 0.0, 1.0}, 2.0);
  CHECK(near(heat_form_coefficient(b, 0.5, 0.0), Complex{2.0, 0.0}, 1e-15));
  const WavePacket c(StableParams{2.0, 0.0, 0.0, 1.0}, 1.0);
  CHECK(near(heat_form_coefficient(c, 1.0, 0.0), Complex{1.0, 0.0}, 1e-15));
  // psi_xx vanishes at the Gaussian inflection points 2x^2 = 1
  CHECK_THROWS_AS(heat_form_coefficient(WavePacket(StableParams{2.0, 0.0, 0.0, 0.5}), 1.0, 0.0), DivisionByZero);
  CHECK_THROWS_AS(heat_form_coefficient(a, 1e-4, 0.0, 1e-3), SingularityError);
}

TEST_CASE("Cauchy heat-form coefficient is constant on each side") {
  const double v = 1.3, m = 0.6, cc = 0.9;
  const WavePacket w(StableParams{1.0, 0.0, m, cc}, v);
  const auto br = cauchy_heat_branches(v, m, cc);
  CHECK(near(br.ahead, -v / Complex{-cc, m}, 1e-15));
  CHECK(near(br.behind, -v / Complex{cc, m}, 1e-15));
  for (double x : linspace(-5.0, 5.0, 40)) {
    const double t = 0.25;
    const Complex k = heat_form_coefficient(w, x, t);
    CHECK(near(k, x - v * t > 0.0 ? br.ahead : br.behind, 1e-14));
  }
}

TEST_CASE("heat-form coefficient reproduces psi_t") {
  for (double alpha : {0.6, 1.0, 1.5, 2.0}) {
    const WavePacket w(StableParams{alpha, 0.0, 1.1, 0.7}, -0.9);
    for (double x : linspace(-3.0, 3.0, 25)) {
      const Complex ut = dpsi_dt(w, x, 0.5);
      CHECK(std::abs(heat_form_coefficient(w, x, 0.5) * d2psi_dx2(w, x, 0.5) - ut) <= 1e-10 * std::abs(ut));
    }
  }
}

TEST_CASE("Schroedinger-form coefficient") {
  CHECK(near(schrodinger_form({1.0, 0.5}, 1.0, 0.0, 1.0), Complex{0.0, 1.0}, 1e-15));
  // h^2 sigma / 2M = 1 with m = c = 1: -(1 - i) / 2
  CHECK(near(schrodinger_form({1.0, 1.0}, 2.0, 1.0, 1.0), Complex{-0.5, 0.5}, 1e-15));
  CHECK(schrodinger_form({2.0, 3.0}, 1.5, 0.0, 0.8).real() == 0.0);
  CHECK_THROWS_AS(schrodinger_form({1.0, 1.0}, 1.0, 0.0, 0.0), DomainError);
  // i h kappa on y > 0 with v = h sigma / 2M
  const DeBroglieContext ctx{1.7, 0.6};
  const double sigma = 0.9, m = 0.4, c = 1.3;
  const auto br = cauchy_heat_branches(ctx.h * sigma / (2.0 * ctx.mass), m, c);
  CHECK(near(kI * ctx.h * br.ahead, schrodinger_form(ctx, sigma, m, c), 1e-14));
}
