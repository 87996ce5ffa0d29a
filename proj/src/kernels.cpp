#include "selfsim/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace selfsim {

namespace {

constexpr double kLogSubstitutionFloor = -40.0;

}  // namespace

double heat_kernel(double x, double t) {
  if (!(t > 0.0)) {
    throw DomainError("heat_kernel: t must be positive");
  }
  return std::exp(-x * x / (4.0 * t)) / (2.0 * std::sqrt(std::numbers::pi * t));
}

double profile_F(double z) {
  // erfc keeps the left tail accurate; mirror for the right tail.
  if (z < 0.0) {
    return 0.5 * std::erfc(-0.5 * z);
  }
  return 1.0 - 0.5 * std::erfc(0.5 * z);
}

double profile_F_quadrature(double z, const QuadratureSpec& spec) {
  spec.validate();
  const double W = spec.tail_radius;
  // Integrate the smaller side and use total mass 1 for the other.
  if (z <= 0.0) {
    return integrate(similarity_kernel, std::min(-W, z - W), z, spec).value;
  }
  return 1.0 - integrate(similarity_kernel, z, std::max(W, z + W), spec).value;
}

double kernel_G(double z, const QuadratureSpec& spec) {
  spec.validate();
  const double W = spec.tail_radius;

  // y in (0, 1]: y = e^s, |log y| = -s, dy = e^s ds.
  auto near_zero = [z](double s) {
    const double y = std::exp(s);
    return similarity_kernel(z - y) * (-s) * y;
  };
  // y in [1, inf).
  auto far = [z](double y) { return similarity_kernel(z - y) * std::log(y); };

  QuadratureSpec inner = spec;
  inner.abs_tol = 0.5 * spec.abs_tol;
  // Splits are supplied in y; map the ones below 1 into s.
  inner.singularity_splits.clear();
  std::vector<double> s_splits;
  for (double y : spec.singularity_splits) {
    if (y > 0.0 && y < 1.0) {
      s_splits.push_back(std::log(y));
    }
  }
  double value = integrate(near_zero, kLogSubstitutionFloor, 0.0, inner, s_splits).value;

  const double upper = std::max(z, 1.0) + W;
  value += integrate(far, 1.0, upper, inner, spec.singularity_splits).value;
  return value;
}

double envelope_rho(double L, double z) {
  if (!(L > 0.0)) {
    throw DomainError("envelope_rho: L must be positive");
  }
  const double d = std::max(std::abs(z) - L, 0.0);
  return std::exp(-0.25 * d * d);
}

}  // namespace selfsim
