#include "selfsim/curvature_flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "selfsim/errors.hpp"
#include "selfsim/profile_bounds.hpp"
#include "selfsim/semigroup.hpp"

namespace selfsim {

namespace {

// Admissible overshoot of the discrete maximum principle before a run is
// declared unstable.
constexpr double kBandSlack = 1e-9;

enum class Flux { linear, curvature };

std::size_t node_count(const FDSolverConfig& cfg) {
  return static_cast<std::size_t>(std::llround(2.0 * cfg.half_width / cfg.dx)) + 1;
}

std::vector<Snapshot> march(std::vector<double> u, const FDSolverConfig& cfg, Flux flux) {
  const std::size_t n = u.size();
  const double dx = cfg.dx;
  const double inv_dx2 = 1.0 / (dx * dx);
  const double inv_2dx = 0.5 / dx;
  const double dt_max = cfg.cfl * dx * dx;
  const auto [lo_it, hi_it] = std::minmax_element(u.begin(), u.end());
  const double band_lo = *lo_it - kBandSlack;
  const double band_hi = *hi_it + kBandSlack;

  std::vector<double> next(n);
  std::vector<Snapshot> snapshots;
  snapshots.reserve(cfg.record_times.size());
  double t = 0.0;
  std::size_t step = 0;

  for (double target : cfg.record_times) {
    // Fixed number of equal steps per record interval keeps t exact at the target.
    const auto steps = static_cast<std::size_t>(std::ceil((target - t) / dt_max - 1e-9));
    const double dt = steps == 0 ? 0.0 : (target - t) / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k, ++step) {
      for (std::size_t i = 0; i < n; ++i) {
        // Homogeneous Neumann: mirror ghost nodes u[-1] = u[1], u[n] = u[n-2].
        const double west = i == 0 ? u[1] : u[i - 1];
        const double east = i + 1 == n ? u[n - 2] : u[i + 1];
        const double lap = (east - 2.0 * u[i] + west) * inv_dx2;
        double rate = lap;
        if (flux == Flux::curvature) {
          const double slope = (east - west) * inv_2dx;
          rate = lap / (1.0 + slope * slope);
        }
        next[i] = u[i] + dt * rate;
      }
      u.swap(next);
      for (std::size_t i = 0; i < n; ++i) {
        if (!(u[i] >= band_lo && u[i] <= band_hi)) {
          char msg[256];
          std::snprintf(msg, sizeof msg,
                        "explicit scheme left [%.17g, %.17g] at step %zu, t=%.17g, node %zu "
                        "(x=%.17g), value %.17g",
                        band_lo, band_hi, step, t + dt * static_cast<double>(k + 1), i,
                        -cfg.half_width + dx * static_cast<double>(i), u[i]);
          throw SolverFailure(msg);
        }
      }
    }
    t = target;
    snapshots.push_back({target, GridFunction(-cfg.half_width, cfg.half_width, u)});
  }
  return snapshots;
}

std::vector<double> sample_initial(const InitialDatum& u0, const FDSolverConfig& cfg) {
  const auto xs = uniform_nodes(-cfg.half_width, cfg.half_width, node_count(cfg));
  std::vector<double> u(xs.size());
  std::transform(xs.begin(), xs.end(), u.begin(), [&u0](double x) { return u0(x); });
  return u;
}

std::vector<double> check_grid(const GridFunction& initial, const FDSolverConfig& cfg) {
  cfg.validate();
  if (initial.size() != node_count(cfg) || initial.x_min() != -cfg.half_width ||
      initial.x_max() != cfg.half_width) {
    throw DomainError("FD solver: initial grid does not match the solver configuration");
  }
  return {initial.values().begin(), initial.values().end()};
}

void require_smooth(const InitialDatum& u0, const char* where) {
  if (!u0.smooth()) {
    throw PreconditionError(std::string(where) + ": datum " + u0.id() +
                            " is not C^2 with Hoelder second derivative");
  }
}

}  // namespace

double FDSolverConfig::buffer() const { return 8.0 * std::sqrt(final_time); }

void FDSolverConfig::validate(double max_observation) const {
  if (!(dx > 0.0) || !(half_width > 0.0)) {
    throw DomainError("FDSolverConfig: dx and half_width must be positive");
  }
  if (!(cfl > 0.0 && cfl <= 0.5)) {
    throw DomainError("FDSolverConfig: cfl must lie in (0, 0.5]");
  }
  if (!(final_time > 0.0)) {
    throw DomainError("FDSolverConfig: final time must be positive");
  }
  const double cells = 2.0 * half_width / dx;
  if (std::abs(cells - std::round(cells)) > 1e-9 * cells || cells < 4.0) {
    throw DomainError("FDSolverConfig: 2*half_width must be a multiple of dx (at least 4 cells)");
  }
  double previous = 0.0;
  for (double r : record_times) {
    if (!(r > previous) || r > final_time) {
      throw DomainError("FDSolverConfig: record times must increase strictly within (0, T]");
    }
    previous = r;
  }
  if (max_observation + buffer() > half_width) {
    throw DomainError("FDSolverConfig: half_width " + std::to_string(half_width) +
                      " smaller than observation radius + 8 sqrt(T) = " +
                      std::to_string(max_observation + buffer()));
  }
}

std::vector<Snapshot> solve_cf(const InitialDatum& u0, const FDSolverConfig& cfg) {
  require_smooth(u0, "solve_cf");
  cfg.validate();
  return march(sample_initial(u0, cfg), cfg, Flux::curvature);
}

std::vector<Snapshot> solve_cf(const GridFunction& initial, const FDSolverConfig& cfg) {
  return march(check_grid(initial, cfg), cfg, Flux::curvature);
}

std::vector<Snapshot> solve_heat_fd(const InitialDatum& u0, const FDSolverConfig& cfg) {
  cfg.validate();
  return march(sample_initial(u0, cfg), cfg, Flux::linear);
}

std::vector<Snapshot> solve_heat_fd(const GridFunction& initial, const FDSolverConfig& cfg) {
  return march(check_grid(initial, cfg), cfg, Flux::linear);
}

std::vector<GapSample> nara_taniguchi_gap(const InitialDatum& u0, const FDSolverConfig& cfg,
                                          const QuadratureSpec& spec) {
  require_smooth(u0, "nara_taniguchi_gap");
  cfg.validate();
  const double reach = cfg.half_width - cfg.buffer();
  if (!(reach > 0.0)) {
    throw DomainError("nara_taniguchi_gap: no interior nodes outside the 8 sqrt(T) buffer");
  }
  const auto snapshots = solve_cf(u0, cfg);
  std::vector<GapSample> out;
  out.reserve(snapshots.size());
  for (const auto& snap : snapshots) {
    double worst = 0.0;
    for (std::size_t i = 0; i < snap.field.size(); ++i) {
      const double x = snap.field.node(i);
      if (std::abs(x) > reach) {
        continue;
      }
      worst = std::max(worst, std::abs(snap.field[i] - evolve(u0, x, snap.time, spec)));
    }
    out.push_back({snap.time, std::sqrt(snap.time) * worst});
  }
  return out;
}

std::vector<Corollary8Sample> corollary8_error(const InitialDatum& u0, FDSolverConfig cfg, double L,
                                               std::span<const double> t_ladder, std::size_t n) {
  require_smooth(u0, "corollary8_error");
  if (u0.decay_class() != DecayClass::decays_at_infinity) {
    throw PreconditionError("corollary8_error: datum " + u0.id() +
                            " does not satisfy |x u0'(x)| -> 0 at infinity");
  }
  if (!(L > 0.0) || n < 3) {
    throw DomainError("corollary8_error: need L > 0 and at least 3 nodes");
  }
  if (t_ladder.empty()) {
    throw DomainError("corollary8_error: empty time ladder");
  }
  for (double t : t_ladder) {
    if (t > cfg.final_time) {
      throw DomainError("corollary8_error: ladder time " + std::to_string(t) +
                        " exceeds solver final time " + std::to_string(cfg.final_time));
    }
  }
  cfg.record_times.assign(t_ladder.begin(), t_ladder.end());
  cfg.validate(L * std::sqrt(t_ladder.back()));

  const auto snapshots = solve_cf(u0, cfg);
  const auto xi = uniform_nodes(-L, L, n);
  std::vector<Corollary8Sample> out;
  for (const auto& snap : snapshots) {
    const double root_t = std::sqrt(snap.time);
    Corollary8Sample sample{snap.time, 0.0, u0(-root_t), u0(root_t)};
    for (double x : xi) {
      const double numeric = snap.field.interpolate_cubic(root_t * x);
      sample.sup_error =
          std::max(sample.sup_error, std::abs(numeric - two_sided_profile(u0, x, snap.time)));
    }
    out.push_back(sample);
  }
  return out;
}

}  // namespace selfsim
