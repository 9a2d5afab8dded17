#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hmcf/flow.hpp"

namespace hmcf {

enum class ExperimentKind { Flow, ModelPde, ChartsValidate, Norms, Oracle };

const char* experiment_kind_name(ExperimentKind k);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view s);

enum class InitialData { Sphere, FlatDisk };

/// One flat `key = value` file per run. Lines starting with '#' and blank
/// lines are ignored. `kind` and `seed` are required; everything else has a
/// default.
struct RunConfig {
  ExperimentKind kind = ExperimentKind::Flow;
  std::uint64_t seed = 0;
  std::string out = "out";

  // flow
  InitialData initial = InitialData::Sphere;
  int n = 129;
  double half_width = 0.5;
  double R0 = 1.0;
  double r0 = 0.5;
  double q = 2.0;
  double flat_tol = 1e-12;
  FlowConfig flow;  // t_end defaults to 0.3 below

  // model_pde
  int ny = 256;
  int nw = 64;
  double w_min = -6.0;
  double w_max = 2.0;
  double dt = 1e-4;
  double t_end_model = 1.0;

  // charts-validate
  int samples = 100;
  double tolerance = 1e-6;

  // norms
  double alpha = 0.5;
  int levels = 3;
  long random_pairs = 10000;

  // oracle
  int table_rows = 11;

  RunConfig() { flow.t_end = 0.3; }
};

struct ConfigViolation {
  std::string key;
  std::string message;
};

struct ConfigResult {
  std::optional<RunConfig> config;
  std::vector<ConfigViolation> violations;
  bool ok() const { return config.has_value(); }
  /// "key: message" lines.
  std::string describe() const;
};

/// Parses and validates, collecting every violation (unknown key, bad value,
/// out-of-range value, missing required field).
ConfigResult parse_config(std::string_view text);

/// Replaces (or adds) the given keys in config text; lines setting an
/// overridden key are dropped before the new `key = value` lines are appended.
std::string with_overrides(std::string_view text,
                           const std::vector<std::pair<std::string, std::string>>& overrides);

/// Range checks on an already built config (used after overrides).
std::vector<ConfigViolation> validate_config(const RunConfig& cfg);

}  // namespace hmcf
