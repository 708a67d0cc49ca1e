#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mfregret/sim.h"

namespace mfregret::cli {

/// Malformed or incomplete configuration. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output. Maps to exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ControllerKind {
  kLqg,
  kHinf,
  kRegretEnergy,
  kRegretPathlength,
  kZero,
  kNoncausal,
};

const char* to_string(ControllerKind kind);
std::optional<ControllerKind> parse_controller(std::string_view name);

/// Every controller kind, in the column order used by all outputs.
const std::vector<ControllerKind>& all_controllers();

struct ExperimentConfig {
  /// "double-integrator", "s1" or "inline".
  std::string plant_name;
  StateSpacePlant plant;
  int horizon = 1000;
  std::vector<std::uint64_t> seeds;
  /// Disturbance shapes; the seed field is replaced per run.
  DisturbanceSpec w;
  DisturbanceSpec v;
  std::vector<ControllerKind> controllers;
  /// Relative bisection tolerance for γ searches.
  double tolerance = 1e-3;
  bool write_traces = false;
  /// When set, controllers are read from controller_<name>.json files in
  /// this directory instead of being synthesized.
  std::optional<std::filesystem::path> controller_dir;
  std::optional<std::filesystem::path> output_dir;

  int verify_horizon = 200;
  int verify_instances = 100;

  bool wants(ControllerKind kind) const;
};

/// Builds a configuration from parsed JSON. Missing optional keys take the
/// documented defaults; `plant` is required.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a JSON file. Throws IoError when the file cannot be
/// opened and ConfigError (with line and column) when it does not parse.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace mfregret::cli
