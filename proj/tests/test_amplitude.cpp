#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "stablewave/amplitude.hpp"

using namespace stablewave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
AmplitudeEvaluator make(StableParams p, AmplitudeMethod m) { return AmplitudeEvaluator(WavePacket(p), m); }
}  // namespace

TEST_CASE("closed-form amplitude examples") {
  CHECK_THAT(amplitude(make({1.0, 0.0, 0.0, 1.0}, AmplitudeMethod::ClosedCauchy), 0.0), WithinRel(0.7978845608, 1e-9));
  const auto levy = make({0.5, -1.0, 0.3, 1.0}, AmplitudeMethod::ClosedLevy);
  CHECK_THAT(amplitude(levy, 0.3 + 1.0), WithinRel(0.6065306597, 1e-9));
  CHECK(amplitude(levy, 0.3) == 0.0);
  CHECK(amplitude(levy, -1.0) == 0.0);
}

TEST_CASE("method and parameter pairing") {
  CHECK(closed_method_for({2.0, 0.0, 1.0, 2.0}) == AmplitudeMethod::ClosedGaussian);
  CHECK(closed_method_for({1.0, 0.0, 1.0, 2.0}) == AmplitudeMethod::ClosedCauchy);
  CHECK(closed_method_for({0.5, -1.0, 1.0, 2.0}) == AmplitudeMethod::ClosedLevy);
  CHECK_THROWS_AS(closed_method_for({1.5, 0.0, 0.0, 1.0}), MethodMismatch);
  CHECK_THROWS_AS(make({1.5, 0.0, 0.0, 1.0}, AmplitudeMethod::ClosedGaussian), MethodMismatch);
  CHECK_THROWS_AS(make({0.5, 1.0, 0.0, 1.0}, AmplitudeMethod::ClosedLevy), MethodMismatch);
  CHECK_THROWS_AS(make({2.0, 0.0, 0.0, 1.0}, AmplitudeMethod::Series), MethodMismatch);
  CHECK_THROWS_AS(make({1.0, 0.0, 0.0, 1.0}, AmplitudeMethod::Series), MethodMismatch);
  CHECK_NOTHROW(make({1.5, 0.3, 0.0, 1.0}, AmplitudeMethod::NumericFT));
}

TEST_CASE("amplitude_numeric examples") {
  CHECK_THAT(amplitude_numeric(WavePacket(StableParams{1.0, 0.0, 0.0, 1.0}), 0.0), WithinRel(0.7978845608, 1e-9));
  CHECK_THAT(amplitude_numeric(WavePacket(StableParams{0.5, -1.0, 0.0, 1.0}), 1.0), WithinRel(std::exp(-0.5), 1e-9));
  // Heisenberg's amplitude at sigma = sigma_o, tau = 1
  const auto e = make({2.0, 0.0, 0.0, std::numbers::pi}, AmplitudeMethod::NumericFT);
  CHECK_THAT(amplitude_sigma(e, 0.0), WithinRel(std::pow(2.0, 0.25), 1e-9));
}

TEST_CASE("Heisenberg amplitude in sigma units") {
  const double sigma0 = 0.6, tau = 1.7;
  const auto e = make(heisenberg_params(sigma0, tau), AmplitudeMethod::ClosedGaussian);
  for (double s : {-0.5, 0.2, 0.6, 1.4}) {
    const double expect = std::pow(2.0 / tau, 0.25) * std::exp(-std::numbers::pi * (s - sigma0) * (s - sigma0) / tau);
    CHECK_THAT(amplitude_sigma(e, s), WithinRel(expect, 1e-13));
  }
  CHECK_THAT(z_to_sigma(sigma_to_z(0.123)), WithinRel(0.123, 1e-15));
}

TEST_CASE("closed forms agree with the numeric transform") {
  struct Case {
    StableParams p;
    AmplitudeMethod m;
  };
  for (auto k : {Case{{2.0, 0.0, 0.4, 1.3}, AmplitudeMethod::ClosedGaussian},
                 Case{{1.0, 0.0, -0.7, 0.8}, AmplitudeMethod::ClosedCauchy},
                 Case{{0.5, -1.0, 0.2, 1.1}, AmplitudeMethod::ClosedLevy}}) {
    const WavePacket w(k.p);
    const AmplitudeEvaluator closed(w, k.m), numeric(w, AmplitudeMethod::NumericFT);
    std::vector<double> zs;
    if (k.m == AmplitudeMethod::ClosedLevy) {
      for (int i = 1; i <= 101; ++i) zs.push_back(k.p.m + 12.0 * k.p.c * k.p.c * i / 101.0);
    } else {
      zs = linspace(k.p.m - 8.0 * k.p.c_prime(), k.p.m + 8.0 * k.p.c_prime(), 101);
    }
    double sup = 0.0;
    for (double z : zs) sup = std::max(sup, std::abs(amplitude(closed, z) - amplitude(numeric, z)));
    INFO(to_string(k.m));
    CHECK(sup <= 1e-6);
  }
}

TEST_CASE("series amplitude matches numeric amplitude") {
  const WavePacket w(StableParams{1.5, 0.4, 0.7, 1.6});
  const AmplitudeEvaluator series(w, AmplitudeMethod::Series), numeric(w, AmplitudeMethod::NumericFT);
  for (double z : linspace(-4.0, 6.0, 21)) {
    CHECK_THAT(amplitude(series, z), WithinAbs(amplitude(numeric, z), 1e-7));
  }
}

TEST_CASE("square_norm_check examples") {
  CHECK_THAT(square_norm_check(make({1.0, 0.0, 0.0, 2.0}, AmplitudeMethod::ClosedCauchy)), WithinAbs(1.0, 1e-8));
  CHECK_THAT(square_norm_check(make({0.5, -1.0, 0.0, 1.5}, AmplitudeMethod::ClosedLevy)), WithinAbs(1.0, 1e-8));
  CHECK_THAT(square_norm_check(make({1.5, 0.0, 0.0, 1.0}, AmplitudeMethod::NumericFT)), WithinAbs(1.0, 1e-6));
  CHECK_THAT(square_norm_check(make({2.0, 0.0, 1.0, 0.4}, AmplitudeMethod::ClosedGaussian)), WithinAbs(1.0, 1e-8));
}

TEST_CASE("symmetric amplitudes are even about m and non-negative") {
  std::mt19937_64 g(401);
  std::uniform_real_distribution<double> uu(0.0, 6.0);
  const auto numeric = make({1.2, 0.0, -0.4, 0.9}, AmplitudeMethod::NumericFT);
  for (int i = 0; i < 20; ++i) {
    const double u = uu(g);
    const double a = amplitude(numeric, -0.4 + u);
    CHECK_THAT(a, WithinAbs(amplitude(numeric, -0.4 - u), 1e-12));
    CHECK(a >= 0.0);
  }
  for (auto e : {make({2.0, 0.0, 0.0, 1.0}, AmplitudeMethod::ClosedGaussian),
                 make({1.0, 0.0, 0.0, 1.0}, AmplitudeMethod::ClosedCauchy),
                 make({0.5, -1.0, 0.0, 1.0}, AmplitudeMethod::ClosedLevy)}) {
    for (double z : linspace(-10.0, 10.0, 81)) CHECK(amplitude(e, z) >= 0.0);
  }
}

TEST_CASE("reduction formula for the Cauchy square") {
  auto f = [](double y) { return 1.0 / ((1.0 + y * y) * (1.0 + y * y)); };
  for (double b : {0.5, 2.0, 10.0}) {
    CHECK_THAT(integrate(f, 0.0, b).value, WithinAbs(cauchy_square_antiderivative(b), 1e-10));
  }
  CHECK(cauchy_square_antiderivative(0.0) == 0.0);
}

TEST_CASE("moment integrals read sub-noise amplitudes as zero") {
  // Far in the Gaussian tail the transform is pure rounding noise.
  const auto numeric = make({2.0, 0.0, 0.0, 5.0}, AmplitudeMethod::NumericFT);
  CHECK(detail::amplitude_for_moment(numeric, 200.0) == 0.0);
  CHECK(detail::amplitude_for_moment(numeric, 5.0) > 0.1);
}
