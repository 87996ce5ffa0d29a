#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "selfsim/errors.hpp"
#include "selfsim/experiment_config.hpp"
#include "selfsim/experiments.hpp"

using namespace selfsim;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir() {
  std::string pattern = (fs::temp_directory_path() / "selfsim_test_XXXXXX").string();
  REQUIRE(mkdtemp(pattern.data()) != nullptr);
  return pattern;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) {
      cells.push_back(cell);
    }
    rows.push_back(cells);
  }
  return rows;
}

std::string error_of(std::string_view doc) {
  try {
    (void)parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

int shell(const std::string& cmd) {
  const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST_CASE("minimal document gets every default") {
  const auto c = parse_config("kind = profile-error\ndatum = step:0,1\nt_ladder = 1, 10\n");
  CHECK(c.kind == ExperimentKind::profile_error);
  CHECK(c.datum == "step:0,1");
  CHECK(c.L == 4.0);
  CHECK(c.n == 401);
  CHECK(c.quadrature.abs_tol == 1e-10);
  CHECK(c.quadrature.tail_radius == 14.0);
  CHECK(c.fd.cfl == 0.4);
  CHECK(c.out_dir == "out");
  CHECK(c.stem() == "profile-error_step-0_1");
}

TEST_CASE("config errors name the problem") {
  CHECK(error_of("kind = profile-error\ndatum = constant:1\nt_ladder = 1\nL = -2\n").find("L must be positive") !=
        std::string::npos);
  const auto unknown = error_of("kind = exact-step\ndatum = step:0,1\nbogus = 3\n");
  CHECK(unknown.find("line 3") != std::string::npos);
  CHECK(unknown.find("bogus") != std::string::npos);
  CHECK(error_of("kind = exact-step\n# comment\nno equals sign\n").find("line 3") != std::string::npos);
  CHECK(error_of("kind = exact-step\ndatum = step:0,1\ndatum = step:0,2\n").find("line 3") != std::string::npos);
  CHECK(error_of("kind = exact-step\nt_ladder = 1\n").find("datum") != std::string::npos);
  CHECK(error_of("kind = profile-error\ndatum = log_sine\n").find("t_ladder") != std::string::npos);
  CHECK(error_of("kind = profile-error\ndatum = log_sine\nt_ladder = 10, 1\n").find("t_ladder") !=
        std::string::npos);
  CHECK(error_of("kind = warp\ndatum = log_sine\n").find("warp") != std::string::npos);
  CHECK(error_of("kind = profile-error\ndatum = nope:1\nt_ladder = 1\n").find("datum") != std::string::npos);
  CHECK(error_of("kind = exact-step\ndatum = log_sine\nt_ladder = 1\n").find("step") != std::string::npos);
  CHECK_FALSE(error_of("kind = curvature-gap\ndatum = smooth_log_sine:1\nfd.half_width = 20\nfd.T = 100\n"
                       "fd.record_times = 1, 100\n")
                  .empty());
}

TEST_CASE("serialize round trip") {
  const char* docs[] = {
      "kind = profile-error\ndatum = sub_log:0.5\nt_ladder = 1e2, 1e4\nexpect_decreasing = true\n"
      "min_reduction = 5\nabs_tol = 1e-12\nname = custom\n",
      "kind = lemma9-check\ndatum = log_sine\nt_ladder = 100\na = 0.25\nb = -0.5\nL = 2.5\nn = 101\n",
      "kind = curvature-gap\ndatum = smooth_log_sine:1\nfd.half_width = 100\nfd.dx = 0.05\n"
      "fd.T = 10\nfd.record_times = 1, 10\ngap_proxy = true\nsnapshots = true\n",
      "kind = rescaled-check\ndatum = step:0,1\nh_ladder = 0.01, 0.005\ntau = 0.3\nexpect_order2 = true\n",
      "kind = sliding-average\ndatum = log_sine\nr_ladder = 10, 100\nx_points = 0, 1.5\nchart = false\n",
      "kind = profile-error\ndatum = sub_log:0.5\nt_ladder = 1e-4, 1e-2\nlimit = zero\n",
  };
  for (const char* doc : docs) {
    CAPTURE(doc);
    const auto once = parse_config(doc);
    const auto text = serialize_config(once);
    const auto twice = parse_config(text);
    CHECK(once == twice);
    CHECK(serialize_config(twice) == text);
  }
}

TEST_CASE("slug and kind names") {
  CHECK(slug("step:0,1") == "step-0_1");
  CHECK(slug("log_sine") == "log_sine");
  for (const char* k : {"profile-error", "exact-step", "prop6-bound", "lemma9-check", "lemma10-check",
                        "rescaled-check", "curvature-gap", "corollary8", "accumulation", "sliding-average"}) {
    CHECK(to_string(parse_kind(k)) == k);
  }
}

TEST_CASE("csv header schema") {
  using V = std::vector<std::string>;
  CHECK(csv_header(ExperimentKind::profile_error) ==
        V{"t", "L", "sup_error", "coeff_left", "coeff_right", "lemma9_rhs", "prop6_rhs_max"});
  CHECK(csv_header(ExperimentKind::exact_step) == V{"x", "t", "numeric", "closed_form", "abs_diff"});
  CHECK(csv_header(ExperimentKind::prop6_bound) == V{"x", "t", "lhs", "rhs", "slack"});
  CHECK(csv_header(ExperimentKind::lemma9_check) == V{"t", "L", "a", "b", "measured_error", "lemma9_rhs"});
  CHECK(csv_header(ExperimentKind::lemma10_check) == V{"alpha", "s", "lhs", "rhs"});
  CHECK(csv_header(ExperimentKind::rescaled_check) ==
        V{"h", "tau", "x_window", "residual", "ratio_to_previous"});
  CHECK(csv_header(ExperimentKind::curvature_gap) == V{"t", "gap"});
  CHECK(csv_header(ExperimentKind::corollary8) == V{"t", "L", "sup_error", "coeff_left", "coeff_right"});
  CHECK(csv_header(ExperimentKind::accumulation) == V{"lambda", "u0_left", "u0_right", "fit_alpha", "fit_beta"});
  CHECK(csv_header(ExperimentKind::sliding_average) == V{"x", "R", "average"});
}

TEST_CASE("exact-step run") {
  const auto dir = fresh_dir();
  auto c = parse_config("kind = exact-step\ndatum = step:0,1\nt_ladder = 0.1, 1, 10, 1e6\n");
  c.out_dir = dir.string();
  const auto out = run(c);
  CHECK(out.status == RunStatus::pass);
  CHECK(describe(out) == "status=0 reason=ok");
  CHECK(out.scalars.at("max_abs_diff") <= 2e-10);
  const auto rows = read_csv(dir / "exact-step_step-0_1.csv");
  REQUIRE(rows.size() == 1 + 4 * 401);
  CHECK(rows.front() == csv_header(ExperimentKind::exact_step));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][4]) <= 2e-10);
  }
  CHECK(fs::exists(dir / "exact-step_step-0_1.svg"));
  CHECK(slurp(dir / "exact-step_step-0_1.summary.json").find("\"status\": 0") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("profile-error on constant data") {
  const auto dir = fresh_dir();
  auto c = parse_config("kind = profile-error\ndatum = constant:0.3\nt_ladder = 1e-4, 1, 1e4\nmax_error = 1e-10\n");
  c.out_dir = dir.string();
  const auto out = run(c);
  CHECK(out.status == RunStatus::pass);
  const auto rows = read_csv(dir / (c.stem() + ".csv"));
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][2]) <= 1e-10);
  }
  fs::remove_all(dir);
}

TEST_CASE("lemma10-check with alpha = 1 has a zero lhs column") {
  const auto dir = fresh_dir();
  auto c = parse_config("kind = lemma10-check\ndatum = log_sine\nalpha_ladder = 1\ns_points = -5, 0.1, 3, 1e4\n");
  c.out_dir = dir.string();
  CHECK(run(c).status == RunStatus::pass);
  const auto rows = read_csv(dir / "lemma10-check_log_sine.csv");
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][2]) == 0.0);
  }
  fs::remove_all(dir);
}

TEST_CASE("failing assertions and solver problems are reported, not thrown") {
  const auto dir = fresh_dir();
  auto c = parse_config("kind = profile-error\ndatum = log_sine\nt_ladder = 1, 100\nmax_error = 1e-6\n");
  c.out_dir = dir.string();
  const auto out = run(c);
  CHECK(out.status == RunStatus::assertion_failure);
  CHECK(out.reason.find('\n') == std::string::npos);
  CHECK(describe(out).rfind("status=1 reason=", 0) == 0);

  auto cfg = parse_config("kind = corollary8\ndatum = smooth_log_sine:1\nt_ladder = 4\nfd.half_width = 60\nfd.T = 4\n");
  cfg.out_dir = dir.string();
  CHECK(run(cfg).status == RunStatus::config_error);
  fs::remove_all(dir);
}

TEST_CASE("runs are byte-for-byte deterministic") {
  const auto a = fresh_dir();
  const auto b = fresh_dir();
  auto c = parse_config("kind = lemma9-check\ndatum = sub_log:0.5\nt_ladder = 1, 1e4\n");
  for (const auto& d : {a, b}) {
    c.out_dir = d.string();
    REQUIRE(run(c).status == RunStatus::pass);
  }
  for (const char* suffix : {".csv", ".svg", ".summary.json"}) {
    CHECK(slurp(a / (c.stem() + suffix)) == slurp(b / (c.stem() + suffix)));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("run_all rejects configs sharing an output stem") {
  const auto cfgs = fresh_dir();
  const auto out = fresh_dir();
  std::ofstream(cfgs / "a.cfg") << "kind = lemma10-check\ndatum = log_sine\nalpha_ladder = 2\ns_points = 1\n";
  std::ofstream(cfgs / "b.cfg") << "kind = lemma10-check\ndatum = log_sine\nalpha_ladder = 4\ns_points = 1\n";
  std::ofstream(cfgs / "c.cfg") << "kind = lemma10-check\ndatum = log_sine\nbroken\n";
  const auto all = run_all(cfgs, out, std::nullopt, 2);
  REQUIRE(all.results.size() == 3);
  CHECK(all.results[0].second.status == RunStatus::pass);
  CHECK(all.results[1].second.status == RunStatus::config_error);
  CHECK(all.results[1].second.reason.find("a.cfg") != std::string::npos);
  CHECK(all.results[2].second.status == RunStatus::config_error);
  CHECK(all.status == RunStatus::config_error);
  CHECK(fs::exists(out / "summary.json"));
  fs::remove_all(cfgs);
  fs::remove_all(out);
}

TEST_CASE("command line exit codes") {
  const std::string cli = SELFSIM_CLI;
  const auto dir = fresh_dir();
  CHECK(shell(cli + " list-data") == 0);
  CHECK(shell(cli + " --seedless list-data") == 2);
  CHECK(shell(cli + " run " + (dir / "missing.cfg").string()) == 2);
  std::ofstream(dir / "ok.cfg") << "kind = lemma10-check\ndatum = log_sine\nalpha_ladder = 1\ns_points = 2\n";
  CHECK(shell(cli + " run " + (dir / "ok.cfg").string() + " --out-dir " + (dir / "o").string()) == 0);
  CHECK(fs::exists(dir / "o" / "lemma10-check_log_sine.csv"));
  std::ofstream(dir / "bad.cfg") << "kind = profile-error\ndatum = log_sine\nt_ladder = 1\nmax_error = 1e-9\n";
  CHECK(shell(cli + " run " + (dir / "bad.cfg").string() + " --out-dir " + (dir / "o").string()) == 1);
  CHECK(shell(cli + " oracle F 0") == 0);
  CHECK(shell(cli + " oracle no_such_function 1") == 2);
  CHECK(shell(cli + " --tol -1 list-data") == 2);
  fs::remove_all(dir);
}
