#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "blasso/lasso_distribution.hpp"
#include "support/test_support.hpp"

// Quadrature references for Lasso(a, b, c) that never call the library's
// normalizer: the kernel is integrated directly after shifting by its peak.

namespace blasso::testing {

inline double log_kernel(double x, const LassoParams& p) { return -0.5 * p.a * x * x + p.b * x - p.c * std::abs(x); }

// Break points covering every region where the kernel is within 60 nats of
// the peak of its half-line; outside them the integrand is below 1e-26 of
// the peak and contributes nothing at double precision.
struct KernelLayout {
  std::vector<double> breaks;
  double shift;
  const std::vector<double>& points() const { return breaks; }
};

// Half-line [0, inf) piece of the kernel exp(-a x^2 / 2 + d x).
inline void half_line_breaks(double a, double d, double sign, std::vector<double>& out, double& peak_log) {
  constexpr double kDrop = 60.0;
  const double sigma = 1.0 / std::sqrt(a);
  double lo = 0.0;
  double peak = 0.0;
  double hi;
  if (d > 0.0) {
    peak = d / a;
    hi = peak + std::sqrt(2.0 * kDrop / a);
    lo = std::max(0.0, peak - std::sqrt(2.0 * kDrop / a));
    peak_log = d * d / (2.0 * a);
  } else {
    hi = 2.0 * kDrop / (-d + std::sqrt(d * d + 2.0 * kDrop * a));
    peak_log = 0.0;
  }
  for (double t : {lo, peak, hi}) out.push_back(sign * t);
  const double width = std::min(sigma, hi - lo);
  for (double k : {0.05, 0.25, 1.0, 3.0}) {
    const double t = peak + k * width;
    if (t < hi) out.push_back(sign * t);
    const double u = peak - k * width;
    if (u > lo) out.push_back(sign * u);
  }
}

inline KernelLayout kernel_layout(const LassoParams& p) {
  KernelLayout layout;
  double right_log;
  double left_log;
  half_line_breaks(p.a, p.b - p.c, 1.0, layout.breaks, right_log);
  half_line_breaks(p.a, -(p.b + p.c), -1.0, layout.breaks, left_log);
  layout.shift = std::max(right_log, left_log);
  std::sort(layout.breaks.begin(), layout.breaks.end());
  return layout;
}

inline double oracle_log_Z(const LassoParams& p) {
  const auto layout = kernel_layout(p);
  const double mass =
      integrate_pieces([&](double x) { return std::exp(log_kernel(x, p) - layout.shift); }, layout.points());
  return layout.shift + std::log(mass);
}

// Integral of g(x) * density(x) over the effective support.
template <class G>
double oracle_expect(const LassoParams& p, G g) {
  const double log_z = oracle_log_Z(p);
  return integrate_pieces([&](double x) { return g(x) * std::exp(log_kernel(x, p) - log_z); },
                          kernel_layout(p).points());
}

// P(X < x) by quadrature.
inline double oracle_cdf(double x, const LassoParams& p) {
  const double log_z = oracle_log_Z(p);
  auto pts = kernel_layout(p).points();
  pts.push_back(x);
  std::vector<double> below;
  for (double t : pts)
    if (t <= x) below.push_back(t);
  if (below.size() < 2) return 0.0;
  return integrate_pieces([&](double t) { return std::exp(log_kernel(t, p) - log_z); }, below);
}

// The normalization / moment sweep: a in {1e-2, 1, 1e3}, b in {-50, 0, 50},
// c in {0, 1, 50}.
inline std::vector<LassoParams> parameter_sweep() {
  std::vector<LassoParams> out;
  for (double a : {1e-2, 1.0, 1e3})
    for (double b : {-50.0, 0.0, 50.0})
      for (double c : {0.0, 1.0, 50.0}) out.push_back({a, b, c});
  return out;
}

}  // namespace blasso::testing
