#include "selfsim/profile_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "selfsim/errors.hpp"
#include "selfsim/grid.hpp"
#include "selfsim/kernels.hpp"
#include "selfsim/semigroup.hpp"

namespace selfsim {

namespace {

constexpr std::size_t kAnnulusSamples = 1000;
constexpr double kAnnulusSafety = 1.01;

void check_window(double L, double t, std::size_t n) {
  if (!(L > 0.0)) {
    throw DomainError("profile: L must be positive");
  }
  if (!(t > 0.0)) {
    throw DomainError("profile: t must be positive");
  }
  if (n < 3) {
    throw DomainError("profile: grid needs at least 3 nodes");
  }
}

}  // namespace

double two_sided_profile(const InitialDatum& u0, double x, double t) {
  if (!(t > 0.0)) {
    throw DomainError("two_sided_profile: t must be positive");
  }
  const double root_t = std::sqrt(t);
  return profile_F(-x) * u0(-root_t) + profile_F(x) * u0(root_t);
}

double constant_profile_error(const InitialDatum& u0, double a, double b, double L, double t,
                              std::size_t n, const QuadratureSpec& spec) {
  check_window(L, t, n);
  double worst = 0.0;
  for (double x : uniform_nodes(-L, L, n)) {
    const double profile = a * profile_F(-x) + b * profile_F(x);
    worst = std::max(worst, std::abs(scaled_evolve(u0, x, t, spec) - profile));
  }
  return worst;
}

ProfileErrorReport profile_error(const InitialDatum& u0, double L, double t, std::size_t n,
                                 const QuadratureSpec& spec, const ProfileErrorOptions& options) {
  check_window(L, t, n);
  ProfileErrorReport report;
  report.t = t;
  report.L = L;
  const double root_t = std::sqrt(t);
  report.coeff_left = u0(-root_t);
  report.coeff_right = u0(root_t);
  report.sup_error =
      constant_profile_error(u0, report.coeff_left, report.coeff_right, L, t, n, spec);
  if (options.with_lemma9) {
    report.lemma9 = Lemma9Bound{report.coeff_left, report.coeff_right,
                                lemma9_rhs(u0, report.coeff_left, report.coeff_right, L, t, spec)};
  }
  if (options.with_prop6) {
    if (!std::isfinite(u0.sup_left()) || !std::isfinite(u0.sup_right())) {
      throw DomainError("profile_error: datum " + u0.id() + " has no finite |x u0'| bound");
    }
    for (double x : uniform_nodes(-L, L, n)) {
      report.prop6_rhs_at.push_back(kernel_G(-x, spec) * u0.sup_left() +
                                    kernel_G(x, spec) * u0.sup_right());
    }
  }
  return report;
}

double lemma9_rhs(const InitialDatum& u0, double a, double b, double L, double t,
                  const QuadratureSpec& spec) {
  if (!(L > 0.0) || !(t > 0.0)) {
    throw DomainError("lemma9_rhs: L and t must be positive");
  }
  spec.validate();
  const double root_t = std::sqrt(t);
  constexpr double inv_two_sqrt_pi = 0.28209479177387814347;
  auto integrand = [&](double z) {
    return inv_two_sqrt_pi * envelope_rho(L, z) *
           (std::abs(u0(-root_t * z) - a) + std::abs(u0(root_t * z) - b));
  };
  const double upper = L + spec.tail_radius;
  std::vector<double> splits{L};
  for (double bp : u0.traits().split_points()) {
    if (bp != 0.0) {
      splits.push_back(std::abs(bp) / root_t);
    }
  }

  if (!u0.traits().oscillates_at_zero) {
    return integrate(integrand, 0.0, upper, spec, splits).value;
  }
  // (0, 1] in z = e^s; the floor span matches the semigroup's.
  QuadratureSpec half = spec;
  half.abs_tol = 0.5 * spec.abs_tol;
  const double edge = std::min(1.0, upper);
  const double span = std::log(1.0 / spec.abs_tol) + 0.25 * spec.tail_radius * spec.tail_radius;
  auto substituted = [&](double s) {
    const double z = std::exp(s);
    return integrand(z) * z;
  };
  std::vector<double> s_splits;
  for (double z : splits) {
    if (z > 0.0 && z < edge) {
      s_splits.push_back(std::log(z));
    }
  }
  double value = integrate(substituted, std::log(edge) - span, std::log(edge), half, s_splits).value;
  value += integrate(integrand, edge, upper, half, splits).value;
  return value;
}

BoundCheck lemma10_check(const InitialDatum& u0, double alpha, double s) {
  if (!(alpha > 0.0)) {
    throw DomainError("lemma10_check: alpha must be positive");
  }
  if (s == 0.0 || !std::isfinite(s)) {
    throw DomainError("lemma10_check: s must be non-zero");
  }
  BoundCheck out;
  out.lhs = std::abs(u0(s * alpha) - u0(s));

  const double r_lo = std::min(alpha, 1.0 / alpha) * std::abs(s);
  const double r_hi = std::max(alpha, 1.0 / alpha) * std::abs(s);
  const double log_lo = std::log(r_lo);
  const double log_step = (std::log(r_hi) - log_lo) / static_cast<double>(kAnnulusSamples - 1);
  double sup = 0.0;
  for (std::size_t i = 0; i < kAnnulusSamples; ++i) {
    const double r = i + 1 == kAnnulusSamples ? r_hi : std::exp(log_lo + log_step * static_cast<double>(i));
    sup = std::max({sup, std::abs(r * u0.deriv(r)), std::abs(r * u0.deriv(-r))});
  }
  const double factor = alpha + 1.0 / alpha;
  out.rhs = factor * factor * kAnnulusSafety * sup;
  return out;
}

BoundCheck prop6_check(const InitialDatum& u0, double x, double t, const QuadratureSpec& spec) {
  if (!std::isfinite(u0.sup_left()) || !std::isfinite(u0.sup_right())) {
    throw DomainError("prop6_check: datum " + u0.id() + " has no finite |x u0'| bound");
  }
  if (!(t > 0.0)) {
    throw DomainError("prop6_check: t must be positive");
  }
  BoundCheck out;
  out.lhs = std::abs(scaled_evolve(u0, x, t, spec) - two_sided_profile(u0, x, t));
  out.rhs = kernel_G(-x, spec) * u0.sup_left() + kernel_G(x, spec) * u0.sup_right();
  return out;
}

std::vector<std::pair<double, double>> accumulation_samples(const InitialDatum& u0,
                                                            std::span<const double> lambda_ladder) {
  std::vector<std::pair<double, double>> out;
  out.reserve(lambda_ladder.size());
  for (double lambda : lambda_ladder) {
    if (!(lambda > 0.0)) {
      throw DomainError("accumulation_samples: lambda must be positive");
    }
    out.emplace_back(u0(-lambda), u0(lambda));
  }
  return out;
}

std::pair<double, double> best_fit_profile(const InitialDatum& u0, double t, double L,
                                           std::size_t n, const QuadratureSpec& spec) {
  check_window(L, t, n);
  // Normal equations for the basis {F(-x), F(x)}.
  double pp = 0.0, pq = 0.0, qq = 0.0, pv = 0.0, qv = 0.0;
  for (double x : uniform_nodes(-L, L, n)) {
    const double p = profile_F(-x);
    const double q = profile_F(x);
    const double v = scaled_evolve(u0, x, t, spec);
    pp += p * p;
    pq += p * q;
    qq += q * q;
    pv += p * v;
    qv += q * v;
  }
  const double det = pp * qq - pq * pq;
  return {(qq * pv - pq * qv) / det, (pp * qv - pq * pv) / det};
}

}  // namespace selfsim
