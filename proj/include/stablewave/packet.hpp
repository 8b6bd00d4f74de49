#pragma once

// The generalized wave packet psi(x, t) = A_o phi(x - v t), where phi is the
// stable characteristic function and A_o normalizes the integral of |psi|^2.

#include <cmath>
#include <numbers>

#include "stablewave/error.hpp"
#include "stablewave/quadrature.hpp"
#include "stablewave/special.hpp"
#include "stablewave/stable.hpp"

namespace stablewave {

/// A_o = [alpha (2c)^(1/alpha) / (2 Gamma(1/alpha))]^(1/2), evaluated in log space.
inline double normalizer(double alpha, double c) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("normalizer: alpha must lie in (0, 2]");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("normalizer: c must be positive");
  const double log_sq = std::log(alpha) + std::log(2.0 * c) / alpha - std::log(2.0) - log_gamma(1.0 / alpha);
  return std::exp(0.5 * log_sq);
}

class WavePacket {
public:
  /// v is the propagation speed E/p. The alpha = 1, beta != 0 packet would
  /// need the logarithmic skew term inside psi and is rejected.
  explicit WavePacket(const StableParams& params, double v = 0.0) : params_(params), v_(v) {
    params_.validate();
    if (!std::isfinite(v)) throw DomainError("WavePacket: v must be finite");
    if (params_.log_branch()) {
      throw UnsupportedBranch("WavePacket: beta != 0 requires alpha != 1");
    }
    a0_ = normalizer(params_.alpha, params_.c);
  }

  const StableParams& params() const noexcept { return params_; }
  double v() const noexcept { return v_; }
  double a0() const noexcept { return a0_; }

private:
  StableParams params_;
  double v_;
  double a0_;
};

/// psi(x, 0) = A_o exp[imx - c|x|^alpha (1 + i beta sgn(x) tan(pi alpha / 2))].
/// The skew factor multiplies only the c|x|^alpha part, so |psi| does not
/// depend on beta and A_o keeps its symmetric value.
inline Complex psi0(const WavePacket& w, double x) { return w.a0() * char_fn(w.params(), x); }

/// psi(x, t) = psi(x - v t, 0).
inline Complex psi(const WavePacket& w, double x, double t) { return psi0(w, x - w.v() * t); }

/// |psi(x, t)|^2 = A_o^2 exp(-2c |x - v t|^alpha).
inline double prob_density(const WavePacket& w, double x, double t) {
  const double y = std::abs(x - w.v() * t);
  const auto& p = w.params();
  return w.a0() * w.a0() * std::exp(-2.0 * p.c * std::pow(y, p.alpha));
}

/// Integral of |psi(x, t)|^2 over the real line by quadrature.
inline double norm_at_time(const WavePacket& w, double t, const QuadratureConfig& q = {}) {
  const auto& p = w.params();
  const double scale = std::exp(-std::log(2.0 * p.c) / p.alpha);
  auto density = [&](double x) { return std::norm(psi(w, x, t)); };
  return integrate_real_line(density, w.v() * t, scale, q).value;
}

/// Integral of |psi(x, 0)|^2; equals one for every valid packet.
inline double norm_check(const WavePacket& w, const QuadratureConfig& q = {}) {
  return norm_at_time(w, 0.0, q);
}

/// Heisenberg's packet H(x, 0) = (2 tau)^(1/4) exp[2 pi i sigma_o x - pi tau x^2].
inline Complex heisenberg_wave(double sigma0, double tau, double x) {
  if (!(tau > 0.0)) throw DomainError("heisenberg_wave: tau must be positive");
  const double amp = std::pow(2.0 * tau, 0.25);
  return amp * std::exp(Complex{-std::numbers::pi * tau * x * x, 2.0 * std::numbers::pi * sigma0 * x});
}

/// Stable parameters that reproduce H(x, 0): m = 2 pi sigma_o, c = pi tau, alpha = 2.
inline StableParams heisenberg_params(double sigma0, double tau) {
  return StableParams{2.0, 0.0, 2.0 * std::numbers::pi * sigma0, std::numbers::pi * tau};
}

}  // namespace stablewave
