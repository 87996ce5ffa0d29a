// Command-line front end: list-data, run, run-all, oracle.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "selfsim/errors.hpp"
#include "selfsim/experiments.hpp"
#include "selfsim/initial_data.hpp"
#include "selfsim/oracle.hpp"
#include "selfsim/report_io.hpp"

namespace {

constexpr int kConfigError = static_cast<int>(selfsim::RunStatus::config_error);

int report(const selfsim::RunOutcome& outcome, const std::string& label) {
  if (outcome.status == selfsim::RunStatus::pass) {
    std::cout << label << ": " << selfsim::describe(outcome) << "\n";
  } else {
    std::cerr << label << ": " << selfsim::describe(outcome) << "\n";
  }
  return static_cast<int>(outcome.status);
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) {
    throw selfsim::ConfigError("not a number: '" + text + "'");
  }
  return v;
}

int run_oracle(const std::string& function, const std::vector<std::string>& args) {
  namespace oracle = selfsim::oracle;
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw selfsim::ConfigError("oracle " + function + " expects " + std::to_string(n) +
                                 " argument(s)");
    }
  };
  double value = 0.0;
  if (function == "F") {
    need(1);
    value = oracle::profile_F(parse_number(args[0]));
  } else if (function == "G") {
    need(1);
    value = oracle::kernel_G(parse_number(args[0]));
  } else if (function == "heat_mass") {
    need(1);
    value = oracle::heat_mass(parse_number(args[0]));
  } else if (function == "scaled_evolve") {
    need(3);
    const auto u0 = selfsim::make_datum(args[0]);
    value = oracle::scaled_evolve([&u0](double y) { return u0(y); }, parse_number(args[1]),
                                  parse_number(args[2]));
  } else if (function == "sliding_average") {
    need(3);
    const auto u0 = selfsim::make_datum(args[0]);
    value = oracle::sliding_average([&u0](double y) { return u0(y); }, parse_number(args[1]),
                                    parse_number(args[2]));
  } else if (function == "lemma9_rhs") {
    need(5);
    const auto u0 = selfsim::make_datum(args[0]);
    value = oracle::lemma9_rhs([&u0](double y) { return u0(y); }, parse_number(args[1]),
                               parse_number(args[2]), parse_number(args[3]), parse_number(args[4]));
  } else {
    throw selfsim::ConfigError("unknown oracle function '" + function + "'");
  }
  std::cout << selfsim::format_double(value) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat semigroup and graph curvature flow: similarity profiles and bound checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_dir;
  double tol = 0.0;
  bool seedless = false;
  app.add_option("--out-dir", out_dir, "Directory for CSV/SVG/JSON outputs")->expected(1);
  app.add_option("--tol", tol, "Override quadrature abs_tol")->check(CLI::PositiveNumber);
  app.add_flag("--seedless", seedless, "Reserved; rejected (no randomness anywhere)");

  auto* list_cmd = app.add_subcommand("list-data", "List the initial-data catalog");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment config");
  run_cmd->add_option("config", config_path, "Config file")->required();

  std::string config_dir;
  unsigned jobs = 0;
  auto* run_all_cmd = app.add_subcommand("run-all", "Run every *.cfg in a directory");
  run_all_cmd->add_option("dir", config_dir, "Config directory")->required();
  run_all_cmd->add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");

  std::string function;
  std::vector<std::string> oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Evaluate a brute-force trapezoid reference");
  oracle_cmd->add_option("function", function,
                         "F | G | heat_mass | scaled_evolve | sliding_average | lemma9_rhs")
      ->required();
  oracle_cmd->add_option("args", oracle_args, "Arguments of the function");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  if (seedless) {
    std::cerr << "status=2 reason=config: --seedless is reserved; the toolkit uses no random numbers\n";
    return kConfigError;
  }

  selfsim::RunOverrides overrides;
  if (!out_dir.empty()) {
    overrides.out_dir = out_dir;
  }
  if (tol > 0.0) {
    overrides.abs_tol = tol;
  }

  try {
    if (*list_cmd) {
      for (const auto& entry : selfsim::catalog()) {
        std::cout << entry.pattern << "\t" << entry.description << "\n";
      }
      return 0;
    }
    if (*run_cmd) {
      return report(selfsim::run_file(config_path, overrides), config_path);
    }
    if (*run_all_cmd) {
      const auto all = selfsim::run_all(config_dir, overrides.out_dir.value_or("out"),
                                        overrides.abs_tol, jobs);
      for (const auto& [name, outcome] : all.results) {
        report(outcome, name);
      }
      return static_cast<int>(all.status);
    }
    if (*oracle_cmd) {
      return run_oracle(function, oracle_args);
    }
  } catch (const selfsim::ConfigError& e) {
    std::cerr << "status=2 reason=config: " << e.what() << "\n";
    return kConfigError;
  } catch (const selfsim::DomainError& e) {
    std::cerr << "status=2 reason=domain: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "status=2 reason=" << e.what() << "\n";
    return kConfigError;
  }
  return 0;
}
