#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/experiment_config.hpp"

namespace selfsim {

/// Process exit codes of the CLI.
enum class RunStatus : int {
  pass = 0,
  assertion_failure = 1,
  config_error = 2,
  solver_failure = 3,
};

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct RunOutcome {
  RunStatus status = RunStatus::pass;
  std::string reason;                     ///< one line, empty on pass
  std::vector<Check> checks;
  std::map<std::string, double> scalars;  ///< also written to the manifest
  std::vector<std::string> files;         ///< file names relative to out_dir
};

/// Fixed CSV header of an experiment kind.
const std::vector<std::string>& csv_header(ExperimentKind kind);

/// Runs one experiment and writes `<stem>.csv`, `<stem>.summary.json` and,
/// when enabled, `<stem>.svg` into config.out_dir. Never throws for
/// configuration or solver problems; those are reported through the status.
RunOutcome run(const ExperimentConfig& config);

struct RunOverrides {
  std::optional<std::filesystem::path> out_dir;
  std::optional<double> abs_tol;
};

/// Parses, applies overrides, validates and runs a config file.
RunOutcome run_file(const std::filesystem::path& config_path, const RunOverrides& overrides = {});

struct RunAllOutcome {
  RunStatus status = RunStatus::pass;  ///< worst status over all configs
  std::vector<std::pair<std::string, RunOutcome>> results;  ///< sorted by file name
};

/// Runs every `*.cfg` in `dir` on up to `jobs` worker threads and writes an
/// aggregate `summary.json` into `out_dir`. All configs write into `out_dir`.
RunAllOutcome run_all(const std::filesystem::path& dir, const std::filesystem::path& out_dir,
                      std::optional<double> abs_tol = std::nullopt, unsigned jobs = 0);

/// One machine-parsable line: `status=<code> reason=<text>`.
std::string describe(const RunOutcome& outcome);

}  // namespace selfsim
