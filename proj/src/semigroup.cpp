#include "selfsim/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "selfsim/errors.hpp"
#include "selfsim/kernels.hpp"

namespace selfsim {

namespace {

void require_positive_time(double t, const char* where) {
  if (!(t > 0.0)) {
    throw DomainError(std::string(where) + ": t must be positive");
  }
}

/// Depth of the log-substituted panel below its pivot, in units of s.
double log_floor_span(const QuadratureSpec& spec) {
  return std::log(1.0 / spec.abs_tol) + 0.25 * spec.tail_radius * spec.tail_radius;
}

/// Integrates h(r) over r in [lo, hi] with 0 <= lo < hi. When lo == 0 and
/// `log_near_origin` is set, the piece (0, min(pivot, hi)] is taken in r = e^s.
template <class Fn>
double integrate_radial(Fn&& h, double lo, double hi, double pivot, bool log_near_origin,
                        const QuadratureSpec& spec, const std::vector<double>& splits) {
  if (!(hi > lo)) {
    return 0.0;
  }
  if (!(log_near_origin && lo == 0.0)) {
    return integrate(h, lo, hi, spec, splits).value;
  }
  QuadratureSpec half = spec;
  half.abs_tol = 0.5 * spec.abs_tol;
  const double edge = std::min(pivot, hi);
  const double s_hi = std::log(edge);
  const double s_lo = s_hi - log_floor_span(spec);
  auto substituted = [&h](double s) {
    const double r = std::exp(s);
    return h(r) * r;
  };
  std::vector<double> s_splits;
  for (double r : splits) {
    if (r > 0.0 && r < edge) {
      s_splits.push_back(std::log(r));
    }
  }
  double value = integrate(substituted, s_lo, s_hi, half, s_splits).value;
  if (hi > edge) {
    value += integrate(h, edge, hi, half, splits).value;
  }
  return value;
}

/// Breakpoints of u0 mapped to radial distance on one side of the origin.
std::vector<double> radial_splits(const InitialDatum& u0, double sign, double scale) {
  std::vector<double> out;
  for (double b : u0.traits().split_points()) {
    if (b * sign > 0.0) {
      out.push_back(std::abs(b) / scale);
    }
  }
  return out;
}

}  // namespace

double evolve(const InitialDatum& u0, double x, double t, const QuadratureSpec& spec) {
  require_positive_time(t, "evolve");
  spec.validate();
  const double root_t = std::sqrt(t);
  const double reach = spec.tail_radius * root_t;
  const double lo = x - reach;
  const double hi = x + reach;
  auto integrand = [&](double y) { return heat_kernel(x - y, t) * u0(y); };

  if (!u0.traits().oscillates_at_zero || !(lo < 0.0 && hi > 0.0)) {
    return integrate(integrand, lo, hi, spec, u0.traits().split_points()).value;
  }

  // Integrate each side of the origin in the radial variable r = |y|.
  QuadratureSpec half = spec;
  half.abs_tol = 0.5 * spec.abs_tol;
  auto right = [&](double r) { return integrand(r); };
  auto left = [&](double r) { return integrand(-r); };
  return integrate_radial(right, 0.0, hi, root_t, true, half, radial_splits(u0, 1.0, 1.0)) +
         integrate_radial(left, 0.0, -lo, root_t, true, half, radial_splits(u0, -1.0, 1.0));
}

double scaled_evolve(const InitialDatum& u0, double x, double t, const QuadratureSpec& spec) {
  require_positive_time(t, "scaled_evolve");
  spec.validate();
  const double root_t = std::sqrt(t);
  const double W = spec.tail_radius;
  const bool oscillates = u0.traits().oscillates_at_zero;

  QuadratureSpec half = spec;
  half.abs_tol = 0.5 * spec.abs_tol;

  // z > 0 contributes u0(+sqrt(t) z) centred at z = x, u0(-sqrt(t) z) centred at z = -x.
  auto right = [&](double z) { return similarity_kernel(x - z) * u0(root_t * z); };
  auto left = [&](double z) { return similarity_kernel(x + z) * u0(-root_t * z); };

  double value = 0.0;
  value += integrate_radial(right, std::max(0.0, x - W), std::max(0.0, x + W), 1.0, oscillates,
                            half, radial_splits(u0, 1.0, root_t));
  value += integrate_radial(left, std::max(0.0, -x - W), std::max(0.0, -x + W), 1.0, oscillates,
                            half, radial_splits(u0, -1.0, root_t));
  return value;
}

double sliding_average(const InitialDatum& u0, double x, double R, const QuadratureSpec& spec) {
  if (!(R > 0.0)) {
    throw DomainError("sliding_average: R must be positive");
  }
  spec.validate();
  QuadratureSpec scaled = spec;
  scaled.abs_tol = spec.abs_tol * 2.0 * R;
  const double lo = x - R;
  const double hi = x + R;
  double total = 0.0;
  if (u0.traits().oscillates_at_zero && lo < 0.0 && hi > 0.0) {
    scaled.abs_tol *= 0.5;
    auto right = [&](double r) { return u0(r); };
    auto left = [&](double r) { return u0(-r); };
    total = integrate_radial(right, 0.0, hi, hi, true, scaled, radial_splits(u0, 1.0, 1.0)) +
            integrate_radial(left, 0.0, -lo, -lo, true, scaled, radial_splits(u0, -1.0, 1.0));
  } else {
    auto f = [&](double y) { return u0(y); };
    total = integrate(f, lo, hi, scaled, u0.traits().split_points()).value;
  }
  return total / (2.0 * R);
}

double rescaled_residual(const InitialDatum& u0, double x_window, double tau, double h,
                         const QuadratureSpec& spec, std::size_t nodes) {
  if (!(h > 0.0) || !(x_window > 0.0) || nodes < 3) {
    throw DomainError("rescaled_residual: need h > 0, x_window > 0 and at least 3 nodes");
  }
  if (!(h < x_window)) {
    throw DomainError("rescaled_residual: step h must be smaller than the window");
  }
  // v(x, tau) = u(e^{tau/2} x, e^tau) = scaled_evolve(u0, x, e^tau).
  auto v = [&](double x, double s) { return scaled_evolve(u0, x, std::exp(s), spec); };
  const auto xs = uniform_nodes(-x_window, x_window, nodes);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double x = xs[i];
    const double centre = v(x, tau);
    const double east = v(x + h, tau);
    const double west = v(x - h, tau);
    const double v_t = (v(x, tau + h) - v(x, tau - h)) / (2.0 * h);
    const double v_xx = (east - 2.0 * centre + west) / (h * h);
    const double v_x = (east - west) / (2.0 * h);
    worst = std::max(worst, std::abs(v_t - v_xx - 0.5 * x * v_x));
  }
  return worst;
}

}  // namespace selfsim
