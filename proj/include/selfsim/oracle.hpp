#pragma once

#include <cstddef>
#include <functional>

/// Brute-force composite-trapezoid references for the quantities computed by
/// the adaptive routines. Each panel near the origin is taken in the
/// logarithmic variable so log-oscillating data stay resolvable. Slow by
/// design: one evaluation costs on the order of 10^6 integrand calls.
namespace selfsim::oracle {

inline constexpr std::size_t kDefaultPanels = 1'000'000;

using Datum = std::function<double(double)>;

double profile_F(double z, std::size_t panels = kDefaultPanels);

double kernel_G(double z, std::size_t panels = kDefaultPanels);

/// Mass of the heat kernel at time t over |x| <= radius sqrt(t).
double heat_mass(double t, double radius = 14.0, std::size_t panels = kDefaultPanels);

/// u(sqrt(t) x, t) for the datum u0.
double scaled_evolve(const Datum& u0, double x, double t, std::size_t panels = kDefaultPanels);

/// (1/2R) int_{x-R}^{x+R} u0.
double sliding_average(const Datum& u0, double x, double R, std::size_t panels = kDefaultPanels);

double lemma9_rhs(const Datum& u0, double a, double b, double L, double t,
                  std::size_t panels = kDefaultPanels);

/// Composite trapezoid rule with `panels` equal panels.
double trapezoid(const std::function<double(double)>& f, double a, double b, std::size_t panels);

}  // namespace selfsim::oracle
