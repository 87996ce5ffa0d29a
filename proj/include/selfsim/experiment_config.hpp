#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selfsim/curvature_flow.hpp"
#include "selfsim/quadrature.hpp"

namespace selfsim {

enum class ExperimentKind {
  profile_error,
  exact_step,
  prop6_bound,
  lemma9_check,
  lemma10_check,
  rescaled_check,
  curvature_gap,
  corollary8,
  accumulation,
  sliding_average,
};

std::string_view to_string(ExperimentKind kind);
/// Inverse of to_string; throws ConfigError on unknown names.
ExperimentKind parse_kind(std::string_view name);

/// Which end of the time axis a ladder approaches.
enum class LimitDirection { infinity, zero };

/// One declarative experiment. See README for the key reference.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::profile_error;
  std::string datum;
  std::string name;  ///< output stem; empty means "<kind>_<datum>"

  std::vector<double> t_ladder;
  std::vector<double> lambda_ladder;
  std::vector<double> r_ladder;
  std::vector<double> h_ladder;
  std::vector<double> x_points;
  std::vector<double> alpha_ladder;
  std::vector<double> s_points;

  double L = 4.0;
  std::size_t n = 401;
  double tau = 0.0;
  double x_window = 4.0;
  std::optional<double> a;
  std::optional<double> b;

  QuadratureSpec quadrature;
  FDSolverConfig fd;
  std::string out_dir = "out";

  // Assertions evaluated by run().
  LimitDirection limit = LimitDirection::infinity;
  bool expect_decreasing = false;
  std::optional<double> min_reduction;
  std::optional<double> max_error;
  std::optional<double> max_residual;
  bool expect_order2 = false;
  bool gap_proxy = false;

  bool chart = true;
  bool snapshots = false;

  /// Checks kind-specific required keys and value constraints.
  /// Throws ConfigError naming the offending key.
  void validate() const;

  /// File stem used for every output of this config.
  std::string stem() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses a flat `key = value` document (`#` starts a comment). Defaults are
/// filled in, unknown keys and syntax errors raise ConfigError with the line
/// number, and the result is validated.
ExperimentConfig parse_config(std::string_view text);

/// Emits a document that parse_config maps back to an equal config.
std::string serialize_config(const ExperimentConfig& config);

/// Turns a catalog id into a filename-safe token ("step:0,1" -> "step-0_1").
std::string slug(std::string_view id);

}  // namespace selfsim
