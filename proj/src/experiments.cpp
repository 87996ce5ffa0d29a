#include "selfsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "selfsim/curvature_flow.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/initial_data.hpp"
#include "selfsim/kernels.hpp"
#include "selfsim/profile_bounds.hpp"
#include "selfsim/report_io.hpp"
#include "selfsim/semigroup.hpp"

namespace selfsim {

namespace {

using nlohmann::json;

struct Product {
  explicit Product(ExperimentKind kind) : table(csv_header(kind)) {}

  CsvTable table;
  std::optional<ChartSpec> chart;
  std::vector<ChartSeries> series;
  std::vector<Check> checks;
  std::map<std::string, double> scalars;
  std::vector<std::pair<std::string, std::string>> extra_files;  // suffix, content

  void check(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

/// Sequence ordered from the far end of the ladder towards the limit.
std::vector<double> towards_limit(std::vector<double> values, LimitDirection limit) {
  if (limit == LimitDirection::zero) {
    std::reverse(values.begin(), values.end());
  }
  return values;
}

void trend_checks(Product& p, const ExperimentConfig& c, const std::vector<double>& errors) {
  const auto seq = towards_limit(errors, c.limit);
  if (c.expect_decreasing) {
    bool ok = true;
    for (std::size_t i = 1; i < seq.size(); ++i) {
      ok = ok && seq[i] < seq[i - 1];
    }
    p.check("strictly_decreasing_towards_limit", ok);
  }
  if (c.min_reduction && !seq.empty()) {
    const bool ok = seq.back() <= seq.front() / *c.min_reduction;
    p.check("reduction_at_least_" + format_double(*c.min_reduction), ok,
            "first=" + format_double(seq.front()) + " last=" + format_double(seq.back()));
  }
}

void run_profile_error(Product& p, const ExperimentConfig& c, const InitialDatum& u0) {
  const auto& q = c.quadrature;
  const bool prop6 = std::isfinite(u0.sup_left()) && std::isfinite(u0.sup_right());
  std::vector<double> errors, bounds;
  bool lemma9_ok = true, prop6_ok = true, max_ok = true;
  for (double t : c.t_ladder) {
    const auto r = profile_error(u0, c.L, t, c.n, q, {true, prop6});
    const double prop6_max =
        prop6 ? *std::max_element(r.prop6_rhs_at.begin(), r.prop6_rhs_at.end()) : std::nan("");
    p.table.add_row({t, c.L, r.sup_error, r.coeff_left, r.coeff_right, r.lemma9->rhs, prop6_max});
    errors.push_back(r.sup_error);
    bounds.push_back(r.lemma9->rhs);
    lemma9_ok = lemma9_ok && r.sup_error <= r.lemma9->rhs + 2.0 * q.abs_tol;
    prop6_ok = prop6_ok && (!prop6 || r.sup_error <= prop6_max + 2.0 * q.abs_tol);
    max_ok = max_ok && (!c.max_error || r.sup_error <= *c.max_error);
  }
  p.check("lemma9_dominates", lemma9_ok);
  if (prop6) {
    p.check("prop6_dominates", prop6_ok);
  }
  if (c.max_error) {
    p.check("sup_error_below_" + format_double(*c.max_error), max_ok);
  }
  trend_checks(p, c, errors);
  p.scalars["max_sup_error"] = *std::max_element(errors.begin(), errors.end());
  p.scalars["first_sup_error"] = errors.front();
  p.scalars["last_sup_error"] = errors.back();
  p.chart = ChartSpec{"profile error " + u0.id(), "t", "sup error on [-L, L]", true, true};
  p.series = {{"sup_error", c.t_ladder, errors}, {"envelope bound", c.t_ladder, bounds}};
}

void run_exact_step(Product& p, const ExperimentConfig& c, const InitialDatum& u0) {
  const double a = u0(-1.0);
  const double b = u0(1.0);
  const double limit = c.max_error.value_or(2.0 * c.quadrature.abs_tol);
  double worst = 0.0;
  ChartSeries diff{"|numeric - closed form|, last t", {}, {}};
  for (double t : c.t_ladder) {
    for (double x : uniform_nodes(-c.L, c.L, c.n)) {
      const double numeric = scaled_evolve(u0, x, t, c.quadrature);
      const double closed = a * profile_F(-x) + b * profile_F(x);
      const double d = std::abs(numeric - closed);
      worst = std::max(worst, d);
      p.table.add_row({x, t, numeric, closed, d});
      if (t == c.t_ladder.back()) {
        diff.xs.push_back(x);
        diff.ys.push_back(d);
      }
    }
  }
  p.check("max_abs_diff_below_" + format_double(limit), worst <= limit, "max=" + format_double(worst));
  p.scalars["max_abs_diff"] = worst;
  p.chart = ChartSpec{"step data vs a F(-x) + b F(x)", "x", "abs diff", false, false};
  p.series = {std::move(diff)};
}

void run_prop6(Product& p, const ExperimentConfig& c, const InitialDatum& u0) {
  bool ok = true;
  double min_slack = std::numeric_limits<double>::infinity();
  for (double t : c.t_ladder) {
    for (double x : c.x_points) {
      const auto r = prop6_check(u0, x, t, c.quadrature);
      const double slack = r.rhs - r.lhs;
      p.table.add_row({x, t, r.lhs, r.rhs, slack});
      ok = ok && r.lhs <= r.rhs + 2.0 * c.quadrature.abs_tol;
      min_slack = std::min(min_slack, slack);
    }
  }
  p.check("prop6_inequality", ok, "min_slack=" + format_double(min_slack));
  p.scalars["min_slack"] = min_slack;
}

void run_lemma9(Product& p, const ExperimentConfig& c, const InitialDatum& u0) {
  bool ok = true;
  std::vector<double> measured, bounds;
  for (double t : c.t_ladder) {
    const double root_t = std::sqrt(t);
    const double a = c.a.value_or(u0(-root_t));
    const double b = c.b.value_or(u0(root_t));
    const double err = constant_profile_error(u0, a, b, c.L, t, c.n, c.quadrature);
    const double rhs = lemma9_rhs(u0, a, b, c.L, t, c.quadrature);
    p.table.add_row({t, c.L, a, b, err, rhs});
    ok = ok && err <= rhs + 2.0 * c.quadrature.abs_tol;
    measured.push_back(err);
    bounds.push_back(rhs);
  }
  p.check("lemma9_inequality", ok);
  p.chart = ChartSpec{"envelope bound " + u0.id(), "t", "error", true, true};
  p.series = {{"measured", c.t_ladder, measured}, {"bound", c.t_ladder, bounds}};
}

void run_lemma10(Product& p, const ExperimentConfig& c, const InitialDatum& u0) {
  bool ok = true;
  for (double alpha : c.alpha_ladder) {
    for (double s : c.s_points) {
      const auto r = lemma10_check(u0, alpha, s);
      p.table.add_row({alpha, s, r.lhs, r.rhs});
      ok = ok && r.lhs <= r.rhs;
    }
  }
  p.check("lemma10_inequality", ok);
}

void run_rescaled(Product& p, const ExperimentConfig& c, const InitialDatum& u0) {
  std::vector<double> residuals;
  bool order_ok = true;
  for (std::size_t i = 0; i < c.h_ladder.size(); ++i) {
    const double h = c.h_ladder[i];
    const double res = rescaled_residual(u0, c.x_window, c.tau, h, c.quadrature);
    std::string ratio_cell;
    if (i > 0) {
      const double ratio = residuals.back() / res;
      // Normalise to the h -> h/2 ratio so the [3.5, 4.5] window applies to any refinement.
      const double scale = std::pow(c.h_ladder[i - 1] / h, 2.0) / 4.0;
      ratio_cell = format_double(ratio);
      order_ok = order_ok && ratio >= 3.5 * scale && ratio <= 4.5 * scale;
    }
    residuals.push_back(res);
    p.table.add_row({format_double(h), format_double(c.tau), format_double(c.x_window),
                     format_double(res), ratio_cell});
  }
  const double limit = c.max_residual.value_or(1e-3);
  p.check("residual_below_" + format_double(limit), residuals.front() <= limit,
          "residual=" + format_double(residuals.front()));
  if (c.expect_order2 && residuals.size() > 1) {
    p.check("second_order_ratio", order_ok);
  }
  p.scalars["first_residual"] = residuals.front();
  p.scalars["last_residual"] = residuals.back();
  p.chart = ChartSpec{"rescaled-frame residual " + u0.id(), "h", "sup residual", true, true};
  p.series = {{"residual", c.h_ladder, residuals}};
}

void run_curvature_gap(Product& p, const ExperimentConfig& c, const InitialDatum& u0) {
  const auto gaps = nara_taniguchi_gap(u0, c.fd, c.quadrature);
  std::vector<double> ts, gs;
  for (const auto& g : gaps) {
    p.table.add_row({g.t, g.gap});
    ts.push_back(g.t);
    gs.push_back(g.gap);
  }
  const double hi = *std::max_element(gs.begin(), gs.end());
  const double lo = *std::min_element(gs.begin(), gs.end());
  p.scalars["gap_max"] = hi;
  p.scalars["gap_min"] = lo;
  if (c.gap_proxy) {
    p.check("max_over_min_at_most_10", hi <= 10.0 * lo,
            "max=" + format_double(hi) + " min=" + format_double(lo));
    bool tail_ok = true;
    for (std::size_t i = gs.size() >= 3 ? gs.size() - 2 : 1; i < gs.size(); ++i) {
      tail_ok = tail_ok && gs[i] <= 1.1 * gs[i - 1];
    }
    p.check("last_three_non_increasing_within_10pct", tail_ok);
  }
  if (c.snapshots) {
    CsvTable snaps({"t", "x", "u"});
    for (const auto& s : solve_cf(u0, c.fd)) {
      for (std::size_t i = 0; i < s.field.size(); ++i) {
        snaps.add_row({s.time, s.field.node(i), s.field[i]});
      }
    }
    p.extra_files.emplace_back("_snapshots.csv", snaps.str());
  }
  p.chart = ChartSpec{"sqrt(t) sup|curvature flow - heat| " + u0.id(), "t", "gap", true, true};
  p.series = {{"gap", ts, gs}};
}

void run_corollary8(Product& p, const ExperimentConfig& c, const InitialDatum& u0) {
  const auto samples = corollary8_error(u0, c.fd, c.L, c.t_ladder, c.n);
  std::vector<double> errors;
  for (const auto& s : samples) {
    p.table.add_row({s.t, c.L, s.sup_error, s.coeff_left, s.coeff_right});
    errors.push_back(s.sup_error);
  }
  trend_checks(p, c, errors);
  p.scalars["first_sup_error"] = errors.front();
  p.scalars["last_sup_error"] = errors.back();
  p.chart = ChartSpec{"curvature-flow profile error " + u0.id(), "t", "sup error", true, true};
  p.series = {{"sup_error", c.t_ladder, errors}};
}

void run_accumulation(Product& p, const ExperimentConfig& c, const InitialDatum& u0) {
  const auto pairs = accumulation_samples(u0, c.lambda_ladder);
  ChartSeries sampled{"(u0(-l), u0(+l))", {}, {}};
  ChartSeries fitted{"best-fit (alpha, beta) at t = l^2", {}, {}};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double lambda = c.lambda_ladder[i];
    const auto [alpha, beta] = best_fit_profile(u0, lambda * lambda, c.L, c.n, c.quadrature);
    p.table.add_row({lambda, pairs[i].first, pairs[i].second, alpha, beta});
    sampled.xs.push_back(pairs[i].first);
    sampled.ys.push_back(pairs[i].second);
    fitted.xs.push_back(alpha);
    fitted.ys.push_back(beta);
  }
  p.chart = ChartSpec{"accumulation samples " + u0.id(), "left coefficient", "right coefficient",
                      false, false};
  p.series = {std::move(sampled), std::move(fitted)};
}

void run_sliding(Product& p, const ExperimentConfig& c, const InitialDatum& u0) {
  const std::vector<double> xs = c.x_points.empty() ? std::vector<double>{0.0} : c.x_points;
  for (double x : xs) {
    ChartSeries s{"x = " + format_double(x), {}, {}};
    for (double R : c.r_ladder) {
      const double avg = sliding_average(u0, x, R, c.quadrature);
      p.table.add_row({x, R, avg});
      s.xs.push_back(R);
      s.ys.push_back(avg);
    }
    p.series.push_back(std::move(s));
  }
  p.chart = ChartSpec{"window averages " + u0.id(), "R", "average", true, false};
}

json manifest(const ExperimentConfig& c, const RunOutcome& outcome) {
  json checks = json::array();
  for (const auto& ch : outcome.checks) {
    checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
  }
  json scalars = json::object();
  for (const auto& [k, v] : outcome.scalars) {
    scalars[k] = std::isfinite(v) ? json(v) : json(format_double(v));
  }
  return {{"kind", std::string(to_string(c.kind))},
          {"datum", c.datum},
          {"stem", c.stem()},
          {"status", static_cast<int>(outcome.status)},
          {"reason", outcome.reason},
          {"checks", checks},
          {"scalars", scalars},
          {"files", outcome.files}};
}

RunOutcome failure(RunStatus status, const std::string& what) {
  RunOutcome out;
  out.status = status;
  out.reason = what;
  std::replace(out.reason.begin(), out.reason.end(), '\n', ' ');
  return out;
}

}  // namespace

const std::vector<std::string>& csv_header(ExperimentKind kind) {
  static const std::map<ExperimentKind, std::vector<std::string>> headers = {
      {ExperimentKind::profile_error,
       {"t", "L", "sup_error", "coeff_left", "coeff_right", "lemma9_rhs", "prop6_rhs_max"}},
      {ExperimentKind::exact_step, {"x", "t", "numeric", "closed_form", "abs_diff"}},
      {ExperimentKind::prop6_bound, {"x", "t", "lhs", "rhs", "slack"}},
      {ExperimentKind::lemma9_check, {"t", "L", "a", "b", "measured_error", "lemma9_rhs"}},
      {ExperimentKind::lemma10_check, {"alpha", "s", "lhs", "rhs"}},
      {ExperimentKind::rescaled_check, {"h", "tau", "x_window", "residual", "ratio_to_previous"}},
      {ExperimentKind::curvature_gap, {"t", "gap"}},
      {ExperimentKind::corollary8, {"t", "L", "sup_error", "coeff_left", "coeff_right"}},
      {ExperimentKind::accumulation, {"lambda", "u0_left", "u0_right", "fit_alpha", "fit_beta"}},
      {ExperimentKind::sliding_average, {"x", "R", "average"}},
  };
  return headers.at(kind);
}

RunOutcome run(const ExperimentConfig& config) {
  Product product(config.kind);
  try {
    config.validate();
    const auto u0 = make_datum(config.datum);
    switch (config.kind) {
      case ExperimentKind::profile_error: run_profile_error(product, config, u0); break;
      case ExperimentKind::exact_step: run_exact_step(product, config, u0); break;
      case ExperimentKind::prop6_bound: run_prop6(product, config, u0); break;
      case ExperimentKind::lemma9_check: run_lemma9(product, config, u0); break;
      case ExperimentKind::lemma10_check: run_lemma10(product, config, u0); break;
      case ExperimentKind::rescaled_check: run_rescaled(product, config, u0); break;
      case ExperimentKind::curvature_gap: run_curvature_gap(product, config, u0); break;
      case ExperimentKind::corollary8: run_corollary8(product, config, u0); break;
      case ExperimentKind::accumulation: run_accumulation(product, config, u0); break;
      case ExperimentKind::sliding_average: run_sliding(product, config, u0); break;
    }
  } catch (const SolverFailure& e) {
    return failure(RunStatus::solver_failure, std::string("solver: ") + e.what());
  } catch (const ConfigError& e) {
    return failure(RunStatus::config_error, std::string("config: ") + e.what());
  } catch (const DomainError& e) {
    return failure(RunStatus::config_error, std::string("domain: ") + e.what());
  } catch (const PreconditionError& e) {
    return failure(RunStatus::config_error, std::string("precondition: ") + e.what());
  }

  RunOutcome outcome;
  outcome.checks = std::move(product.checks);
  outcome.scalars = std::move(product.scalars);
  for (const auto& ch : outcome.checks) {
    if (!ch.passed) {
      outcome.status = RunStatus::assertion_failure;
      outcome.reason += (outcome.reason.empty() ? "assertion: " : "; ") + ch.name +
                        (ch.detail.empty() ? "" : " (" + ch.detail + ")");
    }
  }

  try {
    const std::filesystem::path dir(config.out_dir);
    const std::string stem = config.stem();
    write_atomically(dir / (stem + ".csv"), product.table.str());
    outcome.files.push_back(stem + ".csv");
    if (config.chart && product.chart) {
      write_atomically(dir / (stem + ".svg"), render_svg(*product.chart, product.series));
      outcome.files.push_back(stem + ".svg");
    }
    for (const auto& [suffix, content] : product.extra_files) {
      write_atomically(dir / (stem + suffix), content);
      outcome.files.push_back(stem + suffix);
    }
    outcome.files.push_back(stem + ".summary.json");
    write_atomically(dir / (stem + ".summary.json"), manifest(config, outcome).dump(2) + "\n");
  } catch (const std::exception& e) {
    return failure(RunStatus::config_error, std::string("output: ") + e.what());
  }
  return outcome;
}

namespace {

/// Reads and parses a config file, applying overrides. Throws ConfigError.
ExperimentConfig load_config(const std::filesystem::path& config_path, const RunOverrides& overrides) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read " + config_path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto config = parse_config(buffer.str());
  if (overrides.out_dir) {
    config.out_dir = overrides.out_dir->string();
  }
  if (overrides.abs_tol) {
    config.quadrature.abs_tol = *overrides.abs_tol;
  }
  return config;
}

}  // namespace

RunOutcome run_file(const std::filesystem::path& config_path, const RunOverrides& overrides) {
  try {
    return run(load_config(config_path, overrides));
  } catch (const ConfigError& e) {
    return failure(RunStatus::config_error,
                   "config: " + config_path.filename().string() + ": " + e.what());
  }
}

RunAllOutcome run_all(const std::filesystem::path& dir, const std::filesystem::path& out_dir,
                      std::optional<double> abs_tol, unsigned jobs) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cfg") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<RunOutcome> outcomes(files.size());
  std::vector<bool> skip(files.size(), false);
  std::map<std::string, std::string> owner;  // stem -> first config file
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::string stem;
    try {
      stem = load_config(files[i], {out_dir, abs_tol}).stem();
    } catch (const ConfigError&) {
      continue;  // reported by run_file
    }
    const auto name = files[i].filename().string();
    const auto [it, fresh] = owner.emplace(stem, name);
    if (!fresh) {
      skip[i] = true;
      outcomes[i] = failure(RunStatus::config_error, "config: " + name + ": output stem '" + stem +
                                                         "' already used by " + it->second);
    }
  }
  if (jobs == 0) {
    jobs = std::max(1u, std::thread::hardware_concurrency());
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      if (!skip[i]) {
        outcomes[i] = run_file(files[i], {out_dir, abs_tol});
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < std::min<std::size_t>(jobs, files.size()); ++k) {
      pool.emplace_back(worker);
    }
  }

  RunAllOutcome all;
  json summary = json::array();
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto name = files[i].filename().string();
    all.status = std::max(all.status, outcomes[i].status);
    summary.push_back({{"config", name},
                       {"status", static_cast<int>(outcomes[i].status)},
                       {"reason", outcomes[i].reason},
                       {"files", outcomes[i].files}});
    all.results.emplace_back(name, std::move(outcomes[i]));
  }
  write_atomically(out_dir / "summary.json", summary.dump(2) + "\n");
  return all;
}

std::string describe(const RunOutcome& outcome) {
  return "status=" + std::to_string(static_cast<int>(outcome.status)) +
         " reason=" + (outcome.reason.empty() ? std::string("ok") : outcome.reason);
}

}  // namespace selfsim
