#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace selfsim {

/// Which limit hypothesis on |x u0'(x)| a datum satisfies.
enum class DecayClass {
  decays_at_infinity,  ///< |x u0'(x)| -> 0 as |x| -> inf
  decays_at_zero,      ///< |x u0'(x)| -> 0 as |x| -> 0 only
  bounded_only,        ///< sup |x u0'(x)| < inf, no limit
  none,
};

std::string_view to_string(DecayClass c);

/// Analytic facts about a datum. Suprema are supplied in closed form (or as
/// the maximum of a closed-form envelope), never estimated by sampling.
struct DatumTraits {
  double sup_norm = 0.0;
  double lower = 0.0;  ///< inf u0
  double upper = 0.0;  ///< sup u0
  double sup_left = 0.0;   ///< sup_{y<0} |y u0'(y)|
  double sup_right = 0.0;  ///< sup_{y>0} |y u0'(y)|
  DecayClass decay_class = DecayClass::none;
  bool decays_at_zero = false;      ///< |x u0'(x)| -> 0 as x -> 0 as well
  bool smooth = false;              ///< C^2 with Hoelder second derivative
  bool oscillates_at_zero = false;  ///< infinitely many oscillations as x -> 0
  std::vector<double> breakpoints;  ///< points where u0 is not C^1
  std::vector<double> features;     ///< quadrature hints: edges of localized structure

  /// Breakpoints and features together, sorted.
  std::vector<double> split_points() const;
};

/// A bounded initial value with exact derivative and metadata. Immutable.
class InitialDatum {
 public:
  using Fn = std::function<double(double)>;

  InitialDatum(std::string id, Fn eval, Fn deriv, DatumTraits traits);

  const std::string& id() const { return id_; }
  double operator()(double x) const { return eval_(x); }
  double eval(double x) const { return eval_(x); }
  /// u0'(x); undefined (DomainError) at breakpoints for non-smooth data.
  double deriv(double x) const { return deriv_(x); }
  const DatumTraits& traits() const { return traits_; }

  double sup_norm() const { return traits_.sup_norm; }
  double sup_left() const { return traits_.sup_left; }
  double sup_right() const { return traits_.sup_right; }
  DecayClass decay_class() const { return traits_.decay_class; }
  bool smooth() const { return traits_.smooth; }

 private:
  std::string id_;
  Fn eval_;
  Fn deriv_;
  DatumTraits traits_;
};

InitialDatum make_constant(double c);

/// a for x < 0, b for x > 0, (a + b)/2 at the origin.
InitialDatum make_step(double a, double b);

/// sin(log|x|); x u0'(x) = cos(log|x|). Undefined at 0.
InitialDatum make_log_sine();

/// sin(log(e + |x|)^alpha), 0 < alpha < 1.
InitialDatum make_sub_log(double alpha);

/// sin((log(e + x^2) / 2)^alpha), 0 < alpha <= 1. Smooth on all of R.
InitialDatum make_smooth_log_sine(double alpha);

/// exp(-x^2 / (4 s)), s > 0. Its heat evolution is known in closed form.
InitialDatum make_gaussian(double s);

/// a F(-x/w) + b F(x/w): the step evolved for time w^2. Smooth.
InitialDatum make_mollified_step(double a, double b, double w);

/// Builds a datum from a catalog id such as "step:0,1", "log_sine",
/// "sub_log:0.5", "smooth_log_sine:1". Throws ConfigError on unknown ids
/// and DomainError on out-of-range parameters.
InitialDatum make_datum(std::string_view id);

struct CatalogEntry {
  std::string pattern;
  std::string description;
};

const std::vector<CatalogEntry>& catalog();

/// Envelope maximum max_{r >= 1} alpha r^{alpha-1} (1 - e^{1-r}) shared by the
/// sub_log and smooth_log_sine families (the latter with r = log(e + x^2)).
double log_family_envelope_max(double alpha);

}  // namespace selfsim
