#pragma once

#include "selfsim/quadrature.hpp"

namespace selfsim {

/// Physical heat kernel (4 pi t)^{-1/2} exp(-x^2 / (4t)). Throws DomainError for t <= 0.
double heat_kernel(double x, double t);

/// Gaussian kernel in similarity variables, heat_kernel(x, 1).
inline double similarity_kernel(double x) {
  constexpr double inv_two_sqrt_pi = 0.28209479177387814347;
  return inv_two_sqrt_pi * std::exp(-0.25 * x * x);
}

/// Similarity profile F(z) = (1/(2 sqrt(pi))) int_{-inf}^z exp(-y^2/4) dy,
/// i.e. the CDF of a centred normal with variance 2. Uses erfc so both tails
/// keep full relative precision.
double profile_F(double z);

/// The same profile by adaptive quadrature of the Gaussian density over
/// [min(-W, z - W), z]. Slow; shipped as the cross-check of profile_F.
double profile_F_quadrature(double z, const QuadratureSpec& spec = {});

/// Bound kernel G(z) = (1/(2 sqrt(pi))) int_0^inf exp(-(z-y)^2/4) |log y| dy.
///
/// The integral is split at y = 1. On (0, 1] the substitution y = e^s removes
/// the logarithmic singularity and the s-range is cut at s = -40; on
/// [1, max(z, 1) + W] the integrand is smooth.
double kernel_G(double z, const QuadratureSpec& spec = {});

/// Envelope rho_L(z) = sup_{|z0| <= L} exp(-(z - z0)^2 / 4) = exp(-d^2/4),
/// d = dist(z, [-L, L]). Throws DomainError for L <= 0.
double envelope_rho(double L, double z);

}  // namespace selfsim
