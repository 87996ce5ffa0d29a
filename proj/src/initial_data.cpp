#include "selfsim/initial_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "selfsim/errors.hpp"
#include "selfsim/kernels.hpp"

namespace selfsim {

namespace {

std::string format_param(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

[[noreturn]] void undefined_at_origin(const std::string& id) {
  throw DomainError(id + ": derivative undefined at x = 0");
}

}  // namespace

std::string_view to_string(DecayClass c) {
  switch (c) {
    case DecayClass::decays_at_infinity:
      return "DECAYS_AT_INFINITY";
    case DecayClass::decays_at_zero:
      return "DECAYS_AT_ZERO";
    case DecayClass::bounded_only:
      return "BOUNDED_ONLY";
    case DecayClass::none:
      break;
  }
  return "NONE";
}

InitialDatum::InitialDatum(std::string id, Fn eval, Fn deriv, DatumTraits traits)
    : id_(std::move(id)), eval_(std::move(eval)), deriv_(std::move(deriv)), traits_(std::move(traits)) {
  if (!eval_ || !deriv_) {
    throw PreconditionError("InitialDatum " + id_ + ": eval and deriv are required");
  }
  if (!(traits_.sup_norm >= 0.0) || traits_.sup_left < 0.0 || traits_.sup_right < 0.0) {
    throw PreconditionError("InitialDatum " + id_ + ": metadata must be non-negative");
  }
}

std::vector<double> DatumTraits::split_points() const {
  std::vector<double> out = breakpoints;
  out.insert(out.end(), features.begin(), features.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

InitialDatum make_constant(double c) {
  DatumTraits traits;
  traits.sup_norm = std::abs(c);
  traits.lower = traits.upper = c;
  traits.decay_class = DecayClass::decays_at_infinity;
  traits.decays_at_zero = true;
  traits.smooth = true;
  return InitialDatum("constant:" + format_param(c), [c](double) { return c; },
                      [](double) { return 0.0; }, traits);
}

InitialDatum make_step(double a, double b) {
  DatumTraits traits;
  traits.sup_norm = std::max(std::abs(a), std::abs(b));
  traits.lower = std::min(a, b);
  traits.upper = std::max(a, b);
  traits.decay_class = DecayClass::decays_at_infinity;
  traits.decays_at_zero = true;
  traits.breakpoints = {0.0};
  std::string id = "step:" + format_param(a) + "," + format_param(b);
  auto eval = [a, b](double x) { return x < 0.0 ? a : (x > 0.0 ? b : 0.5 * (a + b)); };
  auto deriv = [id](double x) {
    if (x == 0.0) {
      undefined_at_origin(id);
    }
    return 0.0;
  };
  return InitialDatum(id, eval, deriv, traits);
}

InitialDatum make_log_sine() {
  DatumTraits traits;
  traits.sup_norm = 1.0;
  traits.lower = -1.0;
  traits.upper = 1.0;
  traits.sup_left = traits.sup_right = 1.0;
  traits.decay_class = DecayClass::bounded_only;
  traits.oscillates_at_zero = true;
  traits.breakpoints = {0.0};
  auto eval = [](double x) {
    if (x == 0.0) {
      throw DomainError("log_sine: undefined at x = 0");
    }
    return std::sin(std::log(std::abs(x)));
  };
  auto deriv = [](double x) {
    if (x == 0.0) {
      undefined_at_origin("log_sine");
    }
    return std::cos(std::log(std::abs(x))) / x;
  };
  return InitialDatum("log_sine", eval, deriv, traits);
}

double log_family_envelope_max(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw DomainError("log_family_envelope_max: alpha must lie in (0, 1]");
  }
  if (alpha == 1.0) {
    // r^0 (1 - e^{1-r}) increases to 1 without attaining it.
    return 1.0;
  }
  // The log-derivative vanishes where e^{r-1} - 1 = r / (1 - alpha); the
  // left side is convex and starts below the line, so the root is unique.
  auto g = [alpha](double r) { return std::expm1(r - 1.0) - r / (1.0 - alpha); };
  double lo = 1.0;
  double hi = 2.0;
  while (g(hi) < 0.0) {
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  const double r = 0.5 * (lo + hi);
  return alpha * std::pow(r, alpha - 1.0) * (-std::expm1(1.0 - r));
}

InitialDatum make_sub_log(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("sub_log: alpha must lie in (0, 1)");
  }
  DatumTraits traits;
  traits.sup_norm = 1.0;
  traits.lower = -1.0;
  traits.upper = 1.0;
  traits.sup_left = traits.sup_right = log_family_envelope_max(alpha);
  traits.decay_class = DecayClass::decays_at_infinity;
  traits.decays_at_zero = true;
  traits.breakpoints = {0.0};
  traits.features = {-4.0, 4.0};
  std::string id = "sub_log:" + format_param(alpha);
  auto eval = [alpha](double x) {
    return std::sin(std::pow(std::log(std::numbers::e + std::abs(x)), alpha));
  };
  auto deriv = [alpha, id](double x) {
    if (x == 0.0) {
      undefined_at_origin(id);
    }
    const double ax = std::abs(x);
    const double l = std::log(std::numbers::e + ax);
    const double slope = alpha * std::pow(l, alpha - 1.0) * std::cos(std::pow(l, alpha)) /
                         (std::numbers::e + ax);
    return x > 0.0 ? slope : -slope;
  };
  return InitialDatum(id, eval, deriv, traits);
}

InitialDatum make_smooth_log_sine(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("smooth_log_sine: alpha must lie in (0, 1]");
  }
  DatumTraits traits;
  traits.sup_norm = 1.0;
  traits.lower = -1.0;
  traits.upper = 1.0;
  // x u0'(x) = alpha w^{alpha-1} cos(w^alpha) x^2/(e + x^2), w = r/2,
  // r = log(e + x^2); the envelope is 2^{1-alpha} times the sub_log one.
  traits.sup_left = traits.sup_right =
      std::pow(2.0, 1.0 - alpha) * log_family_envelope_max(alpha);
  traits.decay_class = alpha < 1.0 ? DecayClass::decays_at_infinity : DecayClass::bounded_only;
  traits.decays_at_zero = true;
  traits.smooth = true;
  traits.features = {-4.0, 0.0, 4.0};
  auto eval = [alpha](double x) {
    return std::sin(std::pow(0.5 * std::log(std::numbers::e + x * x), alpha));
  };
  auto deriv = [alpha](double x) {
    const double w = 0.5 * std::log(std::numbers::e + x * x);
    return alpha * std::pow(w, alpha - 1.0) * std::cos(std::pow(w, alpha)) * x /
           (std::numbers::e + x * x);
  };
  return InitialDatum("smooth_log_sine:" + format_param(alpha), eval, deriv, traits);
}

InitialDatum make_gaussian(double s) {
  if (!(s > 0.0)) {
    throw DomainError("gaussian: width parameter s must be positive");
  }
  DatumTraits traits;
  traits.sup_norm = 1.0;
  traits.lower = 0.0;
  traits.upper = 1.0;
  // |x u0'| = (x^2 / 2s) e^{-x^2/4s}, maximal at x^2 = 4s.
  traits.sup_left = traits.sup_right = 2.0 / std::numbers::e;
  traits.decay_class = DecayClass::decays_at_infinity;
  traits.decays_at_zero = true;
  traits.smooth = true;
  traits.features = {-8.0 * std::sqrt(s), 0.0, 8.0 * std::sqrt(s)};
  auto eval = [s](double x) { return std::exp(-x * x / (4.0 * s)); };
  auto deriv = [s](double x) { return -x / (2.0 * s) * std::exp(-x * x / (4.0 * s)); };
  return InitialDatum("gaussian:" + format_param(s), eval, deriv, traits);
}

InitialDatum make_mollified_step(double a, double b, double w) {
  if (!(w > 0.0)) {
    throw DomainError("mollified_step: width must be positive");
  }
  DatumTraits traits;
  traits.sup_norm = std::max(std::abs(a), std::abs(b));
  traits.lower = std::min(a, b);
  traits.upper = std::max(a, b);
  // |x u0'| = |b - a| z g(z), z = x/w, maximal at z = sqrt(2).
  traits.sup_left = traits.sup_right =
      std::abs(b - a) * std::numbers::sqrt2 * std::exp(-0.5) * 0.5 / std::sqrt(std::numbers::pi);
  traits.decay_class = DecayClass::decays_at_infinity;
  traits.decays_at_zero = true;
  traits.smooth = true;
  traits.features = {-8.0 * w, 0.0, 8.0 * w};
  auto eval = [a, b, w](double x) { return a * profile_F(-x / w) + b * profile_F(x / w); };
  auto deriv = [a, b, w](double x) { return (b - a) * similarity_kernel(x / w) / w; };
  return InitialDatum(
      "mollified_step:" + format_param(a) + "," + format_param(b) + "," + format_param(w), eval,
      deriv, traits);
}

namespace {

std::vector<double> parse_params(std::string_view id, std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto piece = text.substr(0, comma);
    double v = 0.0;
    const auto* first = piece.data();
    const auto* last = piece.data() + piece.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || piece.empty()) {
      throw ConfigError("datum '" + std::string(id) + "': bad parameter '" + std::string(piece) +
                        "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) {
      break;
    }
    text.remove_prefix(comma + 1);
  }
  return out;
}

void expect_count(std::string_view id, const std::vector<double>& p, std::size_t n) {
  if (p.size() != n) {
    throw ConfigError("datum '" + std::string(id) + "': expected " + std::to_string(n) +
                      " parameter(s), got " + std::to_string(p.size()));
  }
}

}  // namespace

InitialDatum make_datum(std::string_view id) {
  const auto colon = id.find(':');
  const auto name = id.substr(0, colon);
  const auto params =
      colon == std::string_view::npos ? std::vector<double>{} : parse_params(id, id.substr(colon + 1));

  if (name == "constant") {
    expect_count(id, params, 1);
    return make_constant(params[0]);
  }
  if (name == "step") {
    expect_count(id, params, 2);
    return make_step(params[0], params[1]);
  }
  if (name == "log_sine") {
    expect_count(id, params, 0);
    return make_log_sine();
  }
  if (name == "sub_log") {
    expect_count(id, params, 1);
    return make_sub_log(params[0]);
  }
  if (name == "smooth_log_sine") {
    expect_count(id, params, 1);
    return make_smooth_log_sine(params[0]);
  }
  if (name == "gaussian") {
    expect_count(id, params, 1);
    return make_gaussian(params[0]);
  }
  if (name == "mollified_step") {
    expect_count(id, params, 3);
    return make_mollified_step(params[0], params[1], params[2]);
  }
  throw ConfigError("unknown datum id '" + std::string(id) + "'");
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"constant:c", "u0 = c"},
      {"step:a,b", "a for x<0, b for x>0"},
      {"log_sine", "sin(log|x|), bounded |x u0'| without a limit"},
      {"sub_log:alpha", "sin(log(e+|x|)^alpha), 0<alpha<1, |x u0'| -> 0 at 0 and infinity"},
      {"smooth_log_sine:alpha", "sin((log(e+x^2)/2)^alpha), 0<alpha<=1, C-infinity"},
      {"gaussian:s", "exp(-x^2/(4s)), s>0"},
      {"mollified_step:a,b,w", "a F(-x/w) + b F(x/w), w>0"},
  };
  return entries;
}

}  // namespace selfsim
