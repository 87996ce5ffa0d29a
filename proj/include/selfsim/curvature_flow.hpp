#pragma once

#include <span>
#include <utility>
#include <vector>

#include "selfsim/grid.hpp"
#include "selfsim/initial_data.hpp"
#include "selfsim/quadrature.hpp"

namespace selfsim {

enum class Boundary { neumann_zero };

/// Explicit finite-difference solver settings on [-half_width, half_width].
struct FDSolverConfig {
  double half_width = 400.0;
  double dx = 0.1;
  double cfl = 0.4;  ///< dt = cfl dx^2, stable for cfl <= 1/2
  double final_time = 100.0;
  Boundary boundary = Boundary::neumann_zero;
  std::vector<double> record_times;  ///< strictly increasing, each in (0, final_time]

  /// Width of the strip next to each boundary that observations must avoid.
  double buffer() const;

  /// Throws DomainError on a bad grid, CFL factor, or record list, and when
  /// `max_observation` + buffer() exceeds the half width.
  void validate(double max_observation = 0.0) const;

  bool operator==(const FDSolverConfig&) const = default;
};

struct Snapshot {
  double time;
  GridFunction field;
};

/// u_t = u_xx / (1 + u_x^2). Requires a smooth datum (PreconditionError).
std::vector<Snapshot> solve_cf(const InitialDatum& u0, const FDSolverConfig& cfg);

/// u_t = u_xx with the same grid, stepping and boundary treatment.
std::vector<Snapshot> solve_heat_fd(const InitialDatum& u0, const FDSolverConfig& cfg);

/// Heat twin started from sampled data; the grid must match cfg.
std::vector<Snapshot> solve_heat_fd(const GridFunction& initial, const FDSolverConfig& cfg);

/// Curvature flow started from sampled data; the grid must match cfg.
std::vector<Snapshot> solve_cf(const GridFunction& initial, const FDSolverConfig& cfg);

struct GapSample {
  double t;
  double gap;
};

/// sqrt(t) max |u_cf - e^{t Delta} u0| over grid nodes with |x| <= X - buffer,
/// reference by quadrature. One sample per record time.
std::vector<GapSample> nara_taniguchi_gap(const InitialDatum& u0, const FDSolverConfig& cfg,
                                          const QuadratureSpec& spec = {});

struct Corollary8Sample {
  double t;
  double sup_error;
  double coeff_left;
  double coeff_right;
};

/// Profile error of the curvature-flow solution: sup over n nodes xi of
/// [-L, L] of |u_cf(sqrt(t) xi, t) - two_sided_profile(u0, xi, t)|, the
/// solution read off the FD grid by cubic interpolation.
std::vector<Corollary8Sample> corollary8_error(const InitialDatum& u0, FDSolverConfig cfg, double L,
                                               std::span<const double> t_ladder,
                                               std::size_t n = 401);

}  // namespace selfsim
