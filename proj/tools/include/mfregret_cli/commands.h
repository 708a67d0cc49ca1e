#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mfregret_cli/config.h"

namespace mfregret::cli {

/// Result of synthesizing (or loading) one causal controller.
struct SynthesisOutcome {
  ControllerKind kind = ControllerKind::kLqg;
  /// "ok", "infeasible" or "error".
  std::string status = "error";
  std::string message;
  std::optional<LinearController> controller;
  /// Certified level for hinf and regret controllers, NaN otherwise.
  double gamma = 0.0;
  /// Level-one feasibility report at `gamma`, when the controller has one.
  std::optional<FeasibilityReport> report;
  double closed_loop_radius = 0.0;
};

/// Synthesizes every causal controller the configuration asks for. The
/// noncausal benchmark has no controller and is skipped.
std::vector<SynthesisOutcome> synthesize_controllers(const ExperimentConfig& cfg);

/// Reads controller_<name>.json files written by `run_synthesize`.
std::vector<SynthesisOutcome> load_controllers(const ExperimentConfig& cfg,
                                               const std::filesystem::path& dir);

/// One row of summary.csv.
struct SummaryRow {
  ControllerKind kind = ControllerKind::kLqg;
  std::uint64_t seed = 0;
  double total_cost = 0.0;
  double noncausal_cost = 0.0;
  double regret = 0.0;
  double energy_w = 0.0;
  double pathlength_w = 0.0;
  double energy_v = 0.0;
};

struct SimulationResult {
  std::vector<ControllerKind> controllers;  // column order of plotdata.csv
  std::vector<SummaryRow> rows;             // controller-major, then seed order
  /// Seed-averaged cumulative cost, one column per controller, T+1 rows.
  Mat mean_cumulative_cost;
  /// Median total cost per controller, in `controllers` order.
  std::vector<double> median_cost;
};

/// Runs every (controller, seed) rollout. Seeds are spread over worker
/// threads; the result does not depend on the number of workers. When
/// `trace_dir` is set, one CSV per (controller, seed) is written there.
SimulationResult simulate(const ExperimentConfig& cfg,
                          const std::vector<SynthesisOutcome>& controllers,
                          const std::optional<std::filesystem::path>& trace_dir,
                          unsigned workers = 0);

struct VerifyEntry {
  std::string check;
  double value = 0.0;
  /// Human-readable acceptance rule, e.g. "<= 1e-06".
  std::string rule;
  bool passed = false;
};

std::vector<VerifyEntry> verify(const ExperimentConfig& cfg);

/// The three subcommands. Each writes into `out` (created if needed), prints
/// a short summary to `log` and returns the process exit code. ConfigError
/// and IoError propagate to the caller.
int run_synthesize(const ExperimentConfig& cfg, const std::filesystem::path& out,
                   std::ostream& log);
int run_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out,
                 std::ostream& log);
int run_verify(const ExperimentConfig& cfg, const std::filesystem::path& out,
               std::ostream& log);

/// %.17g, which round-trips every double.
std::string format_double(double value);

}  // namespace mfregret::cli
