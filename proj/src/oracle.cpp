#include "selfsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace selfsim::oracle {

namespace {

constexpr double kW = 14.0;
constexpr double kLogFloor = -80.0;
constexpr double kInvTwoSqrtPi = 0.28209479177387814347;

double gauss(double y) { return kInvTwoSqrtPi * std::exp(-0.25 * y * y); }

/// int_0^hi h(r) dr: (0, min(1, hi)] in r = e^s, the rest directly.
double radial(const std::function<double(double)>& h, double hi, std::size_t panels) {
  if (!(hi > 0.0)) {
    return 0.0;
  }
  const double edge = std::min(1.0, hi);
  double v = trapezoid([&](double s) { const double r = std::exp(s); return h(r) * r; },
                       kLogFloor, std::log(edge), panels);
  if (hi > edge) {
    v += trapezoid(h, edge, hi, panels);
  }
  return v;
}

}  // namespace

double trapezoid(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
  const double h = (b - a) / static_cast<double>(panels);
  double sum = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < panels; ++i) {
    sum += f(a + h * static_cast<double>(i));
  }
  return sum * h;
}

double profile_F(double z, std::size_t panels) {
  return trapezoid(gauss, std::min(-kW, z - kW), z, panels);
}

double kernel_G(double z, std::size_t panels) {
  const double near = trapezoid(
      [z](double s) {
        const double y = std::exp(s);
        return gauss(z - y) * (-s) * y;
      },
      -40.0, 0.0, panels);
  const double far = trapezoid([z](double y) { return gauss(z - y) * std::log(y); }, 1.0,
                               std::max(z, 1.0) + kW, panels);
  return near + far;
}

double heat_mass(double t, double radius, std::size_t panels) {
  const double reach = radius * std::sqrt(t);
  return trapezoid(
      [t](double x) { return std::exp(-x * x / (4.0 * t)) / (2.0 * std::sqrt(std::numbers::pi * t)); },
      -reach, reach, panels);
}

double scaled_evolve(const Datum& u0, double x, double t, std::size_t panels) {
  const double root_t = std::sqrt(t);
  // Integrate each half-line over its full window [0, |centre| + W].
  const double right = radial([&](double z) { return gauss(x - z) * u0(root_t * z); },
                              std::max(0.0, x + kW), panels);
  const double left = radial([&](double z) { return gauss(x + z) * u0(-root_t * z); },
                             std::max(0.0, -x + kW), panels);
  return right + left;
}

double sliding_average(const Datum& u0, double x, double R, std::size_t panels) {
  const double lo = x - R;
  const double hi = x + R;
  double total = 0.0;
  if (lo < 0.0 && hi > 0.0) {
    auto side = [&](double sign, double extent) {
      return trapezoid(
          [&](double s) {
            const double r = std::exp(s);
            return u0(sign * r) * r;
          },
          std::log(extent) + kLogFloor, std::log(extent), panels);
    };
    total = side(1.0, hi) + side(-1.0, -lo);
  } else {
    total = trapezoid(u0, lo, hi, panels);
  }
  return total / (2.0 * R);
}

double lemma9_rhs(const Datum& u0, double a, double b, double L, double t, std::size_t panels) {
  const double root_t = std::sqrt(t);
  auto integrand = [&](double z) {
    const double d = std::max(z - L, 0.0);
    return kInvTwoSqrtPi * std::exp(-0.25 * d * d) *
           (std::abs(u0(-root_t * z) - a) + std::abs(u0(root_t * z) - b));
  };
  // Split at z = L where the envelope has a kink in its second derivative.
  const double near = radial(integrand, std::min(L, 1.0), panels);
  double far = 0.0;
  if (L > 1.0) {
    far += trapezoid(integrand, 1.0, L, panels);
  }
  far += trapezoid(integrand, L, L + kW, panels);
  return near + far;
}

}  // namespace selfsim::oracle
