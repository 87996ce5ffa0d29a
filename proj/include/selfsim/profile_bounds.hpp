#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "selfsim/initial_data.hpp"
#include "selfsim/quadrature.hpp"

namespace selfsim {

/// F(-x) u0(-sqrt t) + F(x) u0(sqrt t).
double two_sided_profile(const InitialDatum& u0, double x, double t);

struct Lemma9Bound {
  double a = 0.0;
  double b = 0.0;
  double rhs = 0.0;
};

/// One time slice of the profile-error experiment.
struct ProfileErrorReport {
  double t = 0.0;
  double L = 0.0;
  double sup_error = 0.0;
  double coeff_left = 0.0;   ///< u0(-sqrt t)
  double coeff_right = 0.0;  ///< u0(+sqrt t)
  std::optional<Lemma9Bound> lemma9;
  std::vector<double> prop6_rhs_at;  ///< bound at each grid node, when requested
};

struct ProfileErrorOptions {
  bool with_lemma9 = false;  ///< bound with (a, b) = the profile coefficients
  bool with_prop6 = false;
};

/// sup over n uniform nodes of [-L, L] of |a F(-x) + b F(x) - u(sqrt t x, t)|.
double constant_profile_error(const InitialDatum& u0, double a, double b, double L, double t,
                              std::size_t n, const QuadratureSpec& spec = {});

/// Grid sup of |scaled_evolve - two_sided_profile| on [-L, L].
ProfileErrorReport profile_error(const InitialDatum& u0, double L, double t, std::size_t n,
                                 const QuadratureSpec& spec = {},
                                 const ProfileErrorOptions& options = {});

/// (1/(2 sqrt pi)) int_0^{L+W} rho_L(z) (|u0(-sqrt t z) - a| + |u0(sqrt t z) - b|) dz.
double lemma9_rhs(const InitialDatum& u0, double a, double b, double L, double t,
                  const QuadratureSpec& spec = {});

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = |u0(s alpha) - u0(s)|; rhs = (alpha + 1/alpha)^2 times 1.01 times the
/// sampled max of |x u0'(x)| over min(alpha,1/alpha)|s| <= |x| <= max(alpha,1/alpha)|s|.
BoundCheck lemma10_check(const InitialDatum& u0, double alpha, double s);

/// lhs = |scaled_evolve - two_sided_profile| at (x, t);
/// rhs = G(-x) sup_left + G(x) sup_right.
BoundCheck prop6_check(const InitialDatum& u0, double x, double t, const QuadratureSpec& spec = {});

/// [(u0(-lambda), u0(+lambda))] for each ladder value.
std::vector<std::pair<double, double>> accumulation_samples(const InitialDatum& u0,
                                                            std::span<const double> lambda_ladder);

/// Least-squares (alpha, beta) of alpha F(-x) + beta F(x) against
/// scaled_evolve(u0, x, t) on n nodes of [-L, L].
std::pair<double, double> best_fit_profile(const InitialDatum& u0, double t, double L,
                                           std::size_t n, const QuadratureSpec& spec = {});

}  // namespace selfsim
