#pragma once

// The amplitude function A(z): Fourier transform of psi(x, 0) with
// prefactor 1/sqrt(2 pi) and kernel exp(-ixz). With this convention the
// integral of A^2 is one and A = A_o sqrt(2 pi) p(z), p the stable density.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "stablewave/error.hpp"
#include "stablewave/packet.hpp"
#include "stablewave/quadrature.hpp"
#include "stablewave/stable.hpp"

namespace stablewave {

enum class AmplitudeMethod { ClosedGaussian, ClosedCauchy, ClosedLevy, Series, NumericFT };

inline std::string_view to_string(AmplitudeMethod m) {
  switch (m) {
    case AmplitudeMethod::ClosedGaussian: return "ClosedGaussian";
    case AmplitudeMethod::ClosedCauchy: return "ClosedCauchy";
    case AmplitudeMethod::ClosedLevy: return "ClosedLevy";
    case AmplitudeMethod::Series: return "Series";
    case AmplitudeMethod::NumericFT: return "NumericFT";
  }
  return "unknown";
}

/// The closed form matching the parameters, if there is one.
inline AmplitudeMethod closed_method_for(const StableParams& p) {
  if (p.alpha == 2.0 && p.beta == 0.0) return AmplitudeMethod::ClosedGaussian;
  if (p.alpha == 1.0 && p.beta == 0.0) return AmplitudeMethod::ClosedCauchy;
  if (p.alpha == 0.5 && p.beta == -1.0) return AmplitudeMethod::ClosedLevy;
  throw MethodMismatch("no closed-form amplitude for these parameters "
                       "(need alpha=2,beta=0 or alpha=1,beta=0 or alpha=1/2,beta=-1)");
}

class AmplitudeEvaluator {
public:
  AmplitudeEvaluator(WavePacket packet, AmplitudeMethod method, QuadratureConfig quadrature = {})
      : packet_(std::move(packet)), method_(method), quadrature_(quadrature) {
    quadrature_.validate();
    const auto& p = packet_.params();
    switch (method_) {
      case AmplitudeMethod::ClosedGaussian:
      case AmplitudeMethod::ClosedCauchy:
      case AmplitudeMethod::ClosedLevy:
        if (closed_method_for(p) != method_) {
          throw MethodMismatch(std::string(to_string(method_)) + " does not match the packet parameters");
        }
        break;
      case AmplitudeMethod::Series:
        if (p.alpha == 1.0 || p.alpha == 2.0) {
          throw MethodMismatch("Series needs alpha in (0, 1) or (1, 2)");
        }
        break;
      case AmplitudeMethod::NumericFT:
        break;
    }
  }

  const WavePacket& packet() const noexcept { return packet_; }
  AmplitudeMethod method() const noexcept { return method_; }
  const QuadratureConfig& quadrature() const noexcept { return quadrature_; }

private:
  WavePacket packet_;
  AmplitudeMethod method_;
  QuadratureConfig quadrature_;
};

struct AmplitudeSample {
  double value;
  double error;     // quadrature error estimate
  double rounding;  // cancellation floor
};

/// (1/sqrt(2 pi)) * integral of psi(x, 0) exp(-ixz) dx with its error estimate.
inline AmplitudeSample amplitude_numeric_sample(const WavePacket& w, double z, const QuadratureConfig& q = {}) {
  const double log_scale = std::log(w.a0()) - 0.5 * std::log(2.0 * std::numbers::pi);
  const auto inv = inverse_transform(w.params(), z, q, log_scale);
  const double residue = std::abs(inv.value.imag());
  if (residue >= 10.0 * q.abs_tol) {
    throw ImaginaryResidue("amplitude_numeric: transform of the packet is not real", residue);
  }
  return {inv.value.real(), inv.error, inv.rounding};
}

/// (1/sqrt(2 pi)) * integral of psi(x, 0) exp(-ixz) dx by quadrature.
inline double amplitude_numeric(const WavePacket& w, double z, const QuadratureConfig& q = {}) {
  return amplitude_numeric_sample(w, z, q).value;
}

namespace detail {

// (2/tau)^(1/4) exp[-pi (sigma - sigma_o)^2 / tau], rewritten in z = 2 pi sigma
// and divided by sqrt(2 pi) for the change of variable.
inline double closed_gaussian(const StableParams& p, double z) {
  const double w = z - p.m;
  return std::pow(2.0 * p.c / std::numbers::pi, 0.25) / std::sqrt(2.0 * p.c) *
         std::exp(-w * w / (4.0 * p.c));
}

// c^(1/2) sqrt(2/pi) c / (c^2 + (z - m)^2)
inline double closed_cauchy(const StableParams& p, double z) {
  const double w = z - p.m;
  return std::sqrt(p.c) * std::sqrt(2.0 / std::numbers::pi) * p.c / (p.c * p.c + w * w);
}

// c * c / (z - m)^(3/2) * exp[-c^2 / (2 (z - m))] on z > m.
inline double closed_levy(const StableParams& p, double z) {
  const double w = z - p.m;
  if (!(w > 0.0)) return 0.0;
  return p.c * p.c / (w * std::sqrt(w)) * std::exp(-p.c * p.c / (2.0 * w));
}

}  // namespace detail

inline double amplitude(const AmplitudeEvaluator& e, double z) {
  const auto& w = e.packet();
  const auto& p = w.params();
  switch (e.method()) {
    case AmplitudeMethod::ClosedGaussian: return detail::closed_gaussian(p, z);
    case AmplitudeMethod::ClosedCauchy: return detail::closed_cauchy(p, z);
    case AmplitudeMethod::ClosedLevy: return detail::closed_levy(p, z);
    case AmplitudeMethod::Series:
      return w.a0() * kPaperDensityFactor * density_series_with_fallback(p, z, e.quadrature()).value;
    case AmplitudeMethod::NumericFT: return amplitude_numeric(w, z, e.quadrature());
  }
  throw MethodMismatch("amplitude: unknown method");
}

namespace detail {

// A(z) for use inside moment integrals: numeric values that do not exceed
// their error estimate or rounding floor are indistinguishable from zero and
// read as zero, so far tails stop contributing quadrature noise.
inline double amplitude_for_moment(const AmplitudeEvaluator& e, double z) {
  if (e.method() != AmplitudeMethod::NumericFT) return amplitude(e, z);
  const auto s = amplitude_numeric_sample(e.packet(), z, e.quadrature());
  return std::abs(s.value) > std::max(s.error, s.rounding) ? s.value : 0.0;
}

}  // namespace detail

/// Integral of A(z)^2 over the real line.
inline double square_norm_check(const AmplitudeEvaluator& e, const QuadratureConfig& q = {}) {
  const auto& p = e.packet().params();
  auto sq = [&](double z) {
    const double a = detail::amplitude_for_moment(e, z);
    return a * a;
  };
  return integrate_real_line(sq, p.m, p.c_prime(), q).value;
}

/// z = 2 pi sigma, the map from Heisenberg's frequency variable.
inline double sigma_to_z(double sigma) { return 2.0 * std::numbers::pi * sigma; }
inline double z_to_sigma(double z) { return z / (2.0 * std::numbers::pi); }

/// Amplitude in sigma units (transform kernel exp(-2 pi i x sigma), no
/// prefactor): sqrt(2 pi) A(2 pi sigma). Its square integrates to one in sigma.
inline double amplitude_sigma(const AmplitudeEvaluator& e, double sigma) {
  return detail::kSqrtTwoPi * amplitude(e, sigma_to_z(sigma));
}

/// Antiderivative of 1/(1 + y^2)^2 from the reduction formula:
/// (1/2) [y / (1 + y^2) + arctan y].
inline double cauchy_square_antiderivative(double y) {
  return 0.5 * (y / (1.0 + y * y) + std::atan(y));
}

}  // namespace stablewave
