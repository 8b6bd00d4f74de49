#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature over caller-supplied
// panels, plus a geometric half-line sweep for integrals to infinity.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

#include "stablewave/error.hpp"

namespace stablewave {

/// Tolerances and budgets shared by every integral in the library.
struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_panels = 200000;
  /// Integrand magnitude below which a tail is dropped.
  double truncation_epsilon = 1e-16;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(truncation_epsilon > 0.0)) {
      throw DomainError("QuadratureConfig: tolerances must be positive");
    }
    if (max_panels < 1) throw DomainError("QuadratureConfig: max_panels must be >= 1");
  }
};

template <typename T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int panels = 0;
};

namespace detail {

// Kronrod abscissae on [-1, 1] (non-negative half, descending) and weights;
// odd indices are the embedded Gauss points.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Segment {
  double a;
  double b;
  T value;
  double error;
};

template <typename T>
struct SegmentOrder {
  bool operator()(const Segment<T>& l, const Segment<T>& r) const { return l.error < r.error; }
};

template <typename T, typename F>
Segment<T> gauss_kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T sum = f(center - dx) + f(center + dx);
    kronrod += sum * kWgk[j];
    if (j % 2 == 1) gauss += sum * kWg[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  using std::abs;
  return {a, b, kronrod, static_cast<double>(abs(kronrod - gauss))};
}

template <typename T>
bool finite_value(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

template <typename T, typename F>
QuadResult<T> refine(F& f, std::vector<Segment<T>> initial, const QuadratureConfig& q) {
  std::priority_queue<Segment<T>, std::vector<Segment<T>>, SegmentOrder<T>> heap;
  std::vector<Segment<T>> frozen;  // too narrow to split further
  T total{};
  double err = 0.0;
  for (auto& s : initial) {
    total += s.value;
    err += s.error;
    heap.push(s);
  }
  int count = static_cast<int>(initial.size());
  using std::abs;
  auto target = [&] { return std::max(q.abs_tol, q.rel_tol * static_cast<double>(abs(total))); };

  while (err > target() && !heap.empty()) {
    if (count >= q.max_panels) {
      throw ToleranceNotMet("quadrature: panel budget exhausted", err);
    }
    Segment<T> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64 * std::numeric_limits<double>::epsilon() *
                                      std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    auto left = gauss_kronrod15<T>(f, worst.a, mid);
    auto right = gauss_kronrod15<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  // Re-sum from the leaves to shed accumulated rounding from the updates.
  T sum{};
  double esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  for (const auto& s : frozen) {
    sum += s.value;
    esum += s.error;
  }
  if (!finite_value(sum)) throw ToleranceNotMet("quadrature: non-finite integrand", esum);
  if (esum > std::max(q.abs_tol, q.rel_tol * static_cast<double>(abs(sum)))) {
    throw ToleranceNotMet("quadrature: tolerance not met", esum);
  }
  return {sum, esum, count};
}

}  // namespace detail

/// Integrates f over [breaks.front(), breaks.back()], starting from the
/// given panels and bisecting the worst panel until the summed error
/// estimate drops below max(abs_tol, rel_tol * |I|).
template <typename F>
auto integrate_panels(F&& f, std::span<const double> breaks, const QuadratureConfig& q)
    -> QuadResult<std::invoke_result_t<F&, double>> {
  using T = std::invoke_result_t<F&, double>;
  q.validate();
  if (breaks.size() < 2) throw DomainError("integrate_panels: need at least two breakpoints");
  if (static_cast<int>(breaks.size()) - 1 > q.max_panels) {
    throw ToleranceNotMet("quadrature: initial panels exceed budget",
                          std::numeric_limits<double>::infinity());
  }
  std::vector<detail::Segment<T>> segs;
  segs.reserve(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) segs.push_back(detail::gauss_kronrod15<T>(f, breaks[i], breaks[i + 1]));
  }
  return detail::refine<T>(f, std::move(segs), q);
}

/// Integrates f over [a, b].
template <typename F>
auto integrate(F&& f, double a, double b, const QuadratureConfig& q = {}) {
  if (!(b > a)) throw DomainError("integrate: require a < b");
  const std::array<double, 2> breaks{a, b};
  return integrate_panels(std::forward<F>(f), std::span<const double>(breaks), q);
}

/// Integrates f(a + s) for s over [0, inf) when direction > 0, or f(a - s)
/// when direction < 0. Panels double in width from `scale`; the sweep stops
/// once three consecutive panels are non-increasing and negligible. An
/// integrand whose tail never becomes negligible (a divergent integral)
/// raises ToleranceNotMet.
template <typename F>
auto integrate_half_line(F&& f, double a, int direction, double scale,
                         const QuadratureConfig& q = {})
    -> QuadResult<std::invoke_result_t<F&, double>> {
  using T = std::invoke_result_t<F&, double>;
  q.validate();
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("integrate_half_line: bad scale");
  if (direction == 0) throw DomainError("integrate_half_line: direction must be non-zero");
  const double dir = direction > 0 ? 1.0 : -1.0;
  auto g = [&](double s) -> T { return f(a + dir * s); };

  using std::abs;
  std::vector<detail::Segment<T>> segs;
  T total{};
  double lo = 0.0;
  double hi = scale;
  double prev = std::numeric_limits<double>::infinity();
  int quiet = 0;
  constexpr int kMaxDoublings = 1000;
  for (int k = 0; k < kMaxDoublings; ++k) {
    auto seg = detail::gauss_kronrod15<T>(g, lo, hi);
    const double mag = static_cast<double>(abs(seg.value)) + seg.error;
    total += seg.value;
    segs.push_back(seg);
    const double negligible =
        std::max(q.truncation_epsilon * static_cast<double>(abs(total)), 1e-3 * q.abs_tol);
    quiet = (mag <= negligible && mag <= prev) ? quiet + 1 : 0;
    prev = mag;
    if (quiet >= 3) return detail::refine<T>(g, std::move(segs), q);
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) break;
  }
  throw ToleranceNotMet("integrate_half_line: tail does not decay (divergent integral?)", prev);
}

/// Integral over the whole real line, split at `center`.
template <typename F>
auto integrate_real_line(F&& f, double center, double scale, const QuadratureConfig& q = {}) {
  auto right = integrate_half_line(f, center, +1, scale, q);
  auto left = integrate_half_line(f, center, -1, scale, q);
  return decltype(right){right.value + left.value, right.error + left.error,
                         right.panels + left.panels};
}

/// n equally spaced points from lo to hi inclusive (n == 1 gives lo).
inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw DomainError("linspace: n must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

}  // namespace stablewave
