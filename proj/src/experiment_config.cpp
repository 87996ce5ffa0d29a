#include "selfsim/experiment_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>

#include "selfsim/errors.hpp"
#include "selfsim/initial_data.hpp"

namespace selfsim {

namespace {

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::profile_error, "profile-error"},
    {ExperimentKind::exact_step, "exact-step"},
    {ExperimentKind::prop6_bound, "prop6-bound"},
    {ExperimentKind::lemma9_check, "lemma9-check"},
    {ExperimentKind::lemma10_check, "lemma10-check"},
    {ExperimentKind::rescaled_check, "rescaled-check"},
    {ExperimentKind::curvature_gap, "curvature-gap"},
    {ExperimentKind::corollary8, "corollary8"},
    {ExperimentKind::accumulation, "accumulation"},
    {ExperimentKind::sliding_average, "sliding-average"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v)) {
    throw ConfigError("key '" + std::string(key) + "': expected a finite number, got '" +
                      std::string(text) + "'");
  }
  return v;
}

std::vector<double> to_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) {
    return out;
  }
  while (true) {
    const auto comma = text.find(',');
    out.push_back(to_double(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) {
      break;
    }
    text.remove_prefix(comma + 1);
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true") {
    return true;
  }
  if (text == "false") {
    return false;
  }
  throw ConfigError("key '" + std::string(key) + "': expected true or false");
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? "," : "") + num(v[i]);
  }
  return out;
}

struct Field {
  std::string_view key;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::optional<std::string>(const ExperimentConfig&)> get;
};

template <class Member>
Field list_field(std::string_view key, Member member) {
  return {key,
          [key, member](ExperimentConfig& c, std::string_view v) { c.*member = to_list(key, v); },
          [member](const ExperimentConfig& c) -> std::optional<std::string> {
            if ((c.*member).empty()) {
              return std::nullopt;
            }
            return list(c.*member);
          }};
}

template <class Member>
Field real_field(std::string_view key, Member member) {
  return {key, [key, member](ExperimentConfig& c, std::string_view v) { c.*member = to_double(key, v); },
          [member](const ExperimentConfig& c) -> std::optional<std::string> { return num(c.*member); }};
}

template <class Member>
Field optional_field(std::string_view key, Member member) {
  return {key, [key, member](ExperimentConfig& c, std::string_view v) { c.*member = to_double(key, v); },
          [member](const ExperimentConfig& c) -> std::optional<std::string> {
            if (!(c.*member)) {
              return std::nullopt;
            }
            return num(*(c.*member));
          }};
}

template <class Member>
Field bool_field(std::string_view key, Member member) {
  return {key, [key, member](ExperimentConfig& c, std::string_view v) { c.*member = to_bool(key, v); },
          [member](const ExperimentConfig& c) -> std::optional<std::string> {
            return (c.*member) ? "true" : "false";
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"kind", [](ExperimentConfig& c, std::string_view v) { c.kind = parse_kind(trim(v)); },
                 [](const ExperimentConfig& c) -> std::optional<std::string> {
                   return std::string(to_string(c.kind));
                 }});
    f.push_back({"datum", [](ExperimentConfig& c, std::string_view v) { c.datum = trim(v); },
                 [](const ExperimentConfig& c) -> std::optional<std::string> { return c.datum; }});
    f.push_back({"name", [](ExperimentConfig& c, std::string_view v) { c.name = trim(v); },
                 [](const ExperimentConfig& c) -> std::optional<std::string> {
                   if (c.name.empty()) {
                     return std::nullopt;
                   }
                   return c.name;
                 }});
    f.push_back(list_field("t_ladder", &ExperimentConfig::t_ladder));
    f.push_back(list_field("lambda_ladder", &ExperimentConfig::lambda_ladder));
    f.push_back(list_field("r_ladder", &ExperimentConfig::r_ladder));
    f.push_back(list_field("h_ladder", &ExperimentConfig::h_ladder));
    f.push_back(list_field("x_points", &ExperimentConfig::x_points));
    f.push_back(list_field("alpha_ladder", &ExperimentConfig::alpha_ladder));
    f.push_back(list_field("s_points", &ExperimentConfig::s_points));
    f.push_back(real_field("L", &ExperimentConfig::L));
    f.push_back({"n",
                 [](ExperimentConfig& c, std::string_view v) {
                   const double d = to_double("n", v);
                   if (d != std::floor(d) || d < 0.0) {
                     throw ConfigError("key 'n': expected a non-negative integer");
                   }
                   c.n = static_cast<std::size_t>(d);
                 },
                 [](const ExperimentConfig& c) -> std::optional<std::string> { return std::to_string(c.n); }});
    f.push_back(real_field("tau", &ExperimentConfig::tau));
    f.push_back(real_field("x_window", &ExperimentConfig::x_window));
    f.push_back(optional_field("a", &ExperimentConfig::a));
    f.push_back(optional_field("b", &ExperimentConfig::b));
    f.push_back({"abs_tol", [](ExperimentConfig& c, std::string_view v) { c.quadrature.abs_tol = to_double("abs_tol", v); },
                 [](const ExperimentConfig& c) -> std::optional<std::string> { return num(c.quadrature.abs_tol); }});
    f.push_back({"tail_radius",
                 [](ExperimentConfig& c, std::string_view v) { c.quadrature.tail_radius = to_double("tail_radius", v); },
                 [](const ExperimentConfig& c) -> std::optional<std::string> { return num(c.quadrature.tail_radius); }});
    f.push_back({"max_panels",
                 [](ExperimentConfig& c, std::string_view v) {
                   const double d = to_double("max_panels", v);
                   if (d != std::floor(d) || d < 0.0) {
                     throw ConfigError("key 'max_panels': expected a non-negative integer");
                   }
                   c.quadrature.max_panels = static_cast<std::size_t>(d);
                 },
                 [](const ExperimentConfig& c) -> std::optional<std::string> {
                   return std::to_string(c.quadrature.max_panels);
                 }});
    f.push_back({"singularity_splits",
                 [](ExperimentConfig& c, std::string_view v) {
                   c.quadrature.singularity_splits = to_list("singularity_splits", v);
                 },
                 [](const ExperimentConfig& c) -> std::optional<std::string> {
                   if (c.quadrature.singularity_splits.empty()) {
                     return std::nullopt;
                   }
                   return list(c.quadrature.singularity_splits);
                 }});
    f.push_back({"fd.half_width", [](ExperimentConfig& c, std::string_view v) { c.fd.half_width = to_double("fd.half_width", v); },
                 [](const ExperimentConfig& c) -> std::optional<std::string> { return num(c.fd.half_width); }});
    f.push_back({"fd.dx", [](ExperimentConfig& c, std::string_view v) { c.fd.dx = to_double("fd.dx", v); },
                 [](const ExperimentConfig& c) -> std::optional<std::string> { return num(c.fd.dx); }});
    f.push_back({"fd.cfl", [](ExperimentConfig& c, std::string_view v) { c.fd.cfl = to_double("fd.cfl", v); },
                 [](const ExperimentConfig& c) -> std::optional<std::string> { return num(c.fd.cfl); }});
    f.push_back({"fd.T", [](ExperimentConfig& c, std::string_view v) { c.fd.final_time = to_double("fd.T", v); },
                 [](const ExperimentConfig& c) -> std::optional<std::string> { return num(c.fd.final_time); }});
    f.push_back({"fd.record_times",
                 [](ExperimentConfig& c, std::string_view v) { c.fd.record_times = to_list("fd.record_times", v); },
                 [](const ExperimentConfig& c) -> std::optional<std::string> {
                   if (c.fd.record_times.empty()) {
                     return std::nullopt;
                   }
                   return list(c.fd.record_times);
                 }});
    f.push_back({"out_dir", [](ExperimentConfig& c, std::string_view v) { c.out_dir = trim(v); },
                 [](const ExperimentConfig& c) -> std::optional<std::string> { return c.out_dir; }});
    f.push_back({"limit",
                 [](ExperimentConfig& c, std::string_view v) {
                   v = trim(v);
                   if (v == "infinity") {
                     c.limit = LimitDirection::infinity;
                   } else if (v == "zero") {
                     c.limit = LimitDirection::zero;
                   } else {
                     throw ConfigError("key 'limit': expected infinity or zero");
                   }
                 },
                 [](const ExperimentConfig& c) -> std::optional<std::string> {
                   return c.limit == LimitDirection::zero ? "zero" : "infinity";
                 }});
    f.push_back(bool_field("expect_decreasing", &ExperimentConfig::expect_decreasing));
    f.push_back(optional_field("min_reduction", &ExperimentConfig::min_reduction));
    f.push_back(optional_field("max_error", &ExperimentConfig::max_error));
    f.push_back(optional_field("max_residual", &ExperimentConfig::max_residual));
    f.push_back(bool_field("expect_order2", &ExperimentConfig::expect_order2));
    f.push_back(bool_field("gap_proxy", &ExperimentConfig::gap_proxy));
    f.push_back(bool_field("chart", &ExperimentConfig::chart));
    f.push_back(bool_field("snapshots", &ExperimentConfig::snapshots));
    return f;
  }();
  return table;
}

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw ConfigError(message);
  }
}

void require_ladder(const std::vector<double>& v, const char* key) {
  require(!v.empty(), "missing required key '" + std::string(key) + "'");
  for (std::size_t i = 0; i < v.size(); ++i) {
    require(v[i] > 0.0, std::string(key) + ": values must be positive");
    require(i == 0 || v[i] > v[i - 1], std::string(key) + ": values must increase strictly");
  }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) {
      return name;
    }
  }
  return "unknown";
}

ExperimentKind parse_kind(std::string_view name) {
  for (const auto& [k, text] : kKindNames) {
    if (text == name) {
      return k;
    }
  }
  throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

std::string slug(std::string_view id) {
  std::string out;
  for (char ch : id) {
    if (ch == ':') {
      out += '-';
    } else if (ch == ',') {
      out += '_';
    } else if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' || ch == '_') {
      out += ch;
    } else {
      out += '_';
    }
  }
  return out;
}

std::string ExperimentConfig::stem() const {
  return name.empty() ? std::string(to_string(kind)) + "_" + slug(datum) : name;
}

void ExperimentConfig::validate() const {
  require(!datum.empty(), "missing required key 'datum'");
  try {
    (void)make_datum(datum);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("datum: ") + e.what());
  }
  require(L > 0.0, "L must be positive");
  require(n >= 3, "n must be at least 3");
  require(x_window > 0.0, "x_window must be positive");
  require(out_dir.size() > 0, "out_dir must not be empty");
  require(stem().find('/') == std::string::npos, "name must not contain '/'");
  try {
    quadrature.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (min_reduction) {
    require(*min_reduction > 0.0, "min_reduction must be positive");
  }

  switch (kind) {
    case ExperimentKind::profile_error:
    case ExperimentKind::lemma9_check:
      require_ladder(t_ladder, "t_ladder");
      require(a.has_value() == b.has_value(), "a and b must be given together");
      break;
    case ExperimentKind::exact_step:
      require_ladder(t_ladder, "t_ladder");
      require(datum.rfind("step:", 0) == 0, "exact-step requires a step:a,b datum");
      break;
    case ExperimentKind::prop6_bound:
      require_ladder(t_ladder, "t_ladder");
      require(!x_points.empty(), "missing required key 'x_points'");
      break;
    case ExperimentKind::lemma10_check:
      require(!alpha_ladder.empty(), "missing required key 'alpha_ladder'");
      require(!s_points.empty(), "missing required key 's_points'");
      for (double al : alpha_ladder) {
        require(al > 0.0, "alpha_ladder: values must be positive");
      }
      for (double s : s_points) {
        require(s != 0.0, "s_points: values must be non-zero");
      }
      break;
    case ExperimentKind::rescaled_check:
      require(!h_ladder.empty(), "missing required key 'h_ladder'");
      for (std::size_t i = 0; i < h_ladder.size(); ++i) {
        require(h_ladder[i] > 0.0 && h_ladder[i] < x_window, "h_ladder: values must lie in (0, x_window)");
        require(i == 0 || h_ladder[i] < h_ladder[i - 1], "h_ladder: values must decrease strictly");
      }
      break;
    case ExperimentKind::curvature_gap:
      require_ladder(fd.record_times, "fd.record_times");
      try {
        fd.validate();
      } catch (const DomainError& e) {
        throw ConfigError(e.what());
      }
      break;
    case ExperimentKind::corollary8:
      require_ladder(t_ladder, "t_ladder");
      require(t_ladder.back() <= fd.final_time, "t_ladder exceeds fd.T");
      break;
    case ExperimentKind::accumulation:
      require_ladder(lambda_ladder, "lambda_ladder");
      break;
    case ExperimentKind::sliding_average:
      require_ladder(r_ladder, "r_ladder");
      break;
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto& table = fields();
    const auto it = std::find_if(table.begin(), table.end(), [key](const Field& f) { return f.key == key; });
    if (it == table.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
    }
    try {
      it->set(config, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!seen.contains("kind")) {
    throw ConfigError("missing required key 'kind'");
  }
  config.validate();
  return config;
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& field : fields()) {
    if (auto value = field.get(config)) {
      out += std::string(field.key) + " = " + *value + "\n";
    }
  }
  return out;
}

}  // namespace selfsim
