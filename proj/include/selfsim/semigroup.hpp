#pragma once

#include "selfsim/grid.hpp"
#include "selfsim/initial_data.hpp"
#include "selfsim/quadrature.hpp"

namespace selfsim {

/// (e^{t Delta} u0)(x) by quadrature of the heat-kernel convolution over
/// |y - x| <= W sqrt(t), split at the datum's breakpoints. Data oscillating at
/// the origin are integrated in y = +-e^s on the panels touching 0.
double evolve(const InitialDatum& u0, double x, double t, const QuadratureSpec& spec = {});

/// u(sqrt(t) x, t) evaluated entirely in similarity variables:
///   int_0^inf g(x + z) u0(-sqrt(t) z) dz + int_0^inf g(x - z) u0(sqrt(t) z) dz,
/// g the unit-time kernel. The physical coordinate sqrt(t) x is never formed.
double scaled_evolve(const InitialDatum& u0, double x, double t, const QuadratureSpec& spec = {});

/// Window average (1/2R) int_{-R}^{R} u0(x + y) dy.
double sliding_average(const InitialDatum& u0, double x, double R, const QuadratureSpec& spec = {});

/// Sup over interior nodes of |v_t - v_xx - (x/2) v_x| for the rescaled
/// solution v(x, tau) = u(e^{tau/2} x, e^tau), with all three derivatives
/// taken by centred differences of step h. Nodes: `nodes` uniform points on
/// [-x_window, x_window]; the two endpoints are excluded.
double rescaled_residual(const InitialDatum& u0, double x_window, double tau, double h,
                         const QuadratureSpec& spec = {}, std::size_t nodes = 81);

}  // namespace selfsim
