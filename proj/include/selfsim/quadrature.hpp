#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "selfsim/errors.hpp"

namespace selfsim {

/// Controls every Gaussian-weighted integral in the library.
///
/// `tail_radius` is measured in similarity units: a convolution at time t is
/// truncated to |y - x| <= tail_radius * sqrt(t).
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double tail_radius = 14.0;
  std::size_t max_panels = std::size_t{1} << 22;
  std::vector<double> singularity_splits;

  /// Throws DomainError when abs_tol <= 0, max_panels < 2, or the tail
  /// radius leaves more than abs_tol of Gaussian mass outside the window.
  void validate() const;

  bool operator==(const QuadratureSpec&) const = default;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
  bool converged = true;

  QuadratureResult& operator+=(const QuadratureResult& other) {
    value += other.value;
    error_estimate += other.error_estimate;
    panels += other.panels;
    converged = converged && other.converged;
    return *this;
  }
};

namespace detail {

struct SimpsonPanel {
  double a, b;
  double fa, fm, fb;
  double whole;
  double tol;
  int depth;
};

inline constexpr int kMaxSimpsonDepth = 56;
inline constexpr int kInitialSubdivisions = 16;

}  // namespace detail

/// Adaptive Simpson on [a, b]. A panel is accepted once the Richardson
/// estimate |S2 - S1| / 15 drops below its share of `tol`; the accepted value
/// carries the extrapolated correction. Panels are processed from an explicit
/// stack in left-to-right order so the summation order is fixed.
template <class Fn>
QuadratureResult adaptive_simpson(Fn&& f, double a, double b, double tol,
                                  std::size_t max_panels) {
  QuadratureResult result;
  if (a == b) {
    return result;
  }
  if (!(tol > 0.0)) {
    throw DomainError("adaptive_simpson: tolerance must be positive");
  }
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::vector<detail::SimpsonPanel> stack;
  stack.reserve(2 * detail::kMaxSimpsonDepth + detail::kInitialSubdivisions);
  const int n0 = detail::kInitialSubdivisions;
  const double width = (b - a) / n0;
  const double panel_tol = tol / n0;
  // Seed right-to-left so panels pop left-to-right.
  for (int i = n0 - 1; i >= 0; --i) {
    const double pa = a + width * i;
    const double pb = (i == n0 - 1) ? b : a + width * (i + 1);
    const double pm = 0.5 * (pa + pb);
    const double fa = f(pa), fm = f(pm), fb = f(pb);
    stack.push_back({pa, pb, fa, fm, fb, (pb - pa) / 6.0 * (fa + 4.0 * fm + fb),
                     panel_tol, 0});
  }

  while (!stack.empty()) {
    const detail::SimpsonPanel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
    const double right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
    const double refined = left + right;
    const double err = std::abs(refined - p.whole) / 15.0;

    const bool budget_spent = result.panels + stack.size() + 2 >= max_panels;
    const bool too_deep = p.depth >= detail::kMaxSimpsonDepth || !(lm > p.a) || !(rm < p.b);
    if (err <= p.tol || budget_spent || too_deep || !std::isfinite(err)) {
      if (err > p.tol) {
        result.converged = false;
      }
      result.value += refined + (refined - p.whole) / 15.0;
      result.error_estimate += err;
      ++result.panels;
      continue;
    }
    stack.push_back({m, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
    stack.push_back({p.a, m, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
  }
  result.value *= sign;
  return result;
}

/// Sorted copy of the split points that fall strictly inside (a, b),
/// bracketed by a and b.
std::vector<double> panel_edges(double a, double b, std::span<const double> splits_a,
                                std::span<const double> splits_b = {});

/// Splits [a, b] at every interior point of `spec.singularity_splits` and
/// `extra_splits`, then runs adaptive Simpson on each top-level panel with
/// tolerance abs_tol divided evenly among panels.
template <class Fn>
QuadratureResult integrate(Fn&& f, double a, double b, const QuadratureSpec& spec,
                           std::span<const double> extra_splits = {}) {
  if (b < a) {
    auto flipped = integrate(f, b, a, spec, extra_splits);
    flipped.value = -flipped.value;
    return flipped;
  }
  const auto edges = panel_edges(a, b, spec.singularity_splits, extra_splits);
  QuadratureResult total;
  if (edges.size() < 2) {
    return total;
  }
  const auto n = static_cast<double>(edges.size() - 1);
  const std::size_t budget = std::max<std::size_t>(spec.max_panels / (edges.size() - 1), 2);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    total += adaptive_simpson(f, edges[i], edges[i + 1], spec.abs_tol / n, budget);
  }
  return total;
}

}  // namespace selfsim
