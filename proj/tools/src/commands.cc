#include "mfregret_cli/commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

namespace mfregret::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<RegretMode> regret_mode(ControllerKind kind) {
  if (kind == ControllerKind::kRegretEnergy) return RegretMode::kEnergy;
  if (kind == ControllerKind::kRegretPathlength) return RegretMode::kPathlength;
  return std::nullopt;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

// Minimal CSV writer. Every write goes through one stream so a failed
// disk write surfaces at close().
class CsvFile {
 public:
  explicit CsvFile(const fs::path& path) : path_(path), out_(path) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << quote(fields[i]);
    }
    out_ << '\n';
  }

  void close() {
    out_.close();
    if (!out_) throw IoError("failed writing " + path_.string());
  }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }

  fs::path path_;
  std::ofstream out_;
};

json matrix_json(const Mat& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& node, Eigen::Index rows, Eigen::Index cols,
                     const std::string& where) {
  Mat M(rows, cols);
  bool ok = node.is_array() &&
            static_cast<Eigen::Index>(node.size()) == rows;
  for (Eigen::Index i = 0; ok && i < rows; ++i) {
    const json& row = node[static_cast<std::size_t>(i)];
    ok = row.is_array() && static_cast<Eigen::Index>(row.size()) == cols;
    for (Eigen::Index j = 0; ok && j < cols; ++j) {
      const json& x = row[static_cast<std::size_t>(j)];
      ok = x.is_number();
      if (ok) M(i, j) = x.get<double>();
    }
  }
  if (!ok) {
    throw ConfigError(where + ": expected a " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " matrix");
  }
  return M;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(); }

json certificate_json(const SynthesisOutcome& o) {
  json c;
  c["closed_loop_spectral_radius"] = number_or_null(o.closed_loop_radius);
  if (o.report) {
    const FeasibilityReport& r = *o.report;
    c["feasible"] = r.feasible;
    c["control_stable"] = r.control_stable;
    c["control_inertia"] = r.control_inertia;
    c["estimation_stable"] = r.estimation_stable;
    c["estimation_inertia"] = r.estimation_inertia;
    c["coupling"] = r.coupling;
    c["spectral_radius_PcPe"] = r.spectral_radius_PcPe;
    c["control_status"] = to_string(r.control.status);
    c["control_residual"] = r.control.residual;
    c["estimation_status"] = to_string(r.estimation.status);
    c["estimation_residual"] = r.estimation.residual;
  }
  return c;
}

SynthesisOutcome synthesize_one(const ExperimentConfig& cfg, ControllerKind kind) {
  const StateSpacePlant& plant = cfg.plant;
  SynthesisOutcome o;
  o.kind = kind;
  o.gamma = kNaN;
  o.closed_loop_radius = kNaN;
  try {
    if (kind == ControllerKind::kLqg) {
      o.controller = lqg_controller(plant);
    } else if (kind == ControllerKind::kZero) {
      o.controller = zero_controller(plant);
    } else if (kind == ControllerKind::kHinf) {
      const HinfSystem system = to_hinf_system(plant);
      HinfOptimum best = hinf_optimal(system, cfg.tolerance);
      o.gamma = best.gamma;
      o.report = hinf_feasible(scale_system(system, best.gamma));
      o.controller = std::move(best.controller);
    } else if (const auto mode = regret_mode(kind)) {
      RegretCertificate cert = optimal_regret(plant, *mode, cfg.tolerance);
      o.gamma = cert.gamma;
      o.report = cert.feasibility;
      if (!cert.controller) {
        o.status = "infeasible";
        o.message = "no feasible level found by the search";
        return o;
      }
      o.controller = std::move(*cert.controller);
    }
    o.status = "ok";
    o.closed_loop_radius = spectral_radius(interconnection_matrix(plant, *o.controller));
  } catch (const std::runtime_error& e) {
    o.status = "infeasible";
    o.message = e.what();
  } catch (const std::exception& e) {
    o.status = "error";
    o.message = e.what();
  }
  return o;
}

std::vector<std::string> trace_header(const StateSpacePlant& plant) {
  std::vector<std::string> h{"t"};
  auto add = [&](const char* prefix, int count) {
    for (int i = 0; i < count; ++i) h.push_back(prefix + std::to_string(i));
  };
  add("x", plant.n());
  add("u", plant.m());
  add("y", plant.r());
  add("w", plant.p());
  add("v", plant.r());
  h.push_back("stage_cost");
  return h;
}

void write_trace(const fs::path& path, const StateSpacePlant& plant,
                 const SimulationTrace& tr) {
  CsvFile csv(path);
  csv.row(trace_header(plant));
  const int T = tr.steps();
  for (int t = 0; t <= T; ++t) {
    std::vector<std::string> f{std::to_string(t)};
    auto add = [&](const Mat& M) {
      for (Eigen::Index j = 0; j < M.cols(); ++j) {
        f.push_back(t < M.rows() ? format_double(M(t, j)) : std::string());
      }
    };
    add(tr.x);
    add(tr.u);
    add(tr.y);
    add(tr.w);
    add(tr.v);
    f.push_back(format_double(tr.stage_costs(t)));
    csv.row(f);
  }
  csv.close();
}

double median(std::vector<double> values) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size() / 2;
  return values.size() % 2 ? values[k] : 0.5 * (values[k - 1] + values[k]);
}

DisturbanceSpec seeded(DisturbanceSpec spec, std::uint64_t seed) {
  spec.seed = seed;
  return spec;
}

std::string pass_word(bool ok) { return ok ? "PASS" : "FAIL"; }

// Thresholds in rule text are round numbers; %g keeps them readable.
std::string short_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::vector<SynthesisOutcome> synthesize_controllers(const ExperimentConfig& cfg) {
  std::vector<SynthesisOutcome> out;
  for (ControllerKind kind : cfg.controllers) {
    if (kind == ControllerKind::kNoncausal) continue;
    out.push_back(synthesize_one(cfg, kind));
  }
  return out;
}

std::vector<SynthesisOutcome> load_controllers(const ExperimentConfig& cfg,
                                               const fs::path& dir) {
  const StateSpacePlant& plant = cfg.plant;
  std::vector<SynthesisOutcome> out;
  for (ControllerKind kind : cfg.controllers) {
    if (kind == ControllerKind::kNoncausal) continue;
    const fs::path path = dir / ("controller_" + std::string(to_string(kind)) + ".json");
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
    SynthesisOutcome o;
    o.kind = kind;
    o.status = doc.value("status", std::string("error"));
    o.message = doc.value("message", std::string());
    o.gamma = doc.contains("gamma") && doc["gamma"].is_number()
                  ? doc["gamma"].get<double>()
                  : kNaN;
    o.closed_loop_radius = kNaN;
    if (o.status == "ok") {
      if (!doc.contains("state_dim") || !doc["state_dim"].is_number_integer()) {
        throw ConfigError(path.string() + ": missing state_dim");
      }
      const Eigen::Index d = doc["state_dim"].get<Eigen::Index>();
      const std::string where = path.string();
      LinearController K;
      K.A_K = matrix_from_json(doc["A_K"], d, d, where + " A_K");
      K.B_K = matrix_from_json(doc["B_K"], d, plant.r(), where + " B_K");
      K.C_K = matrix_from_json(doc["C_K"], plant.m(), d, where + " C_K");
      K.D_K = matrix_from_json(doc["D_K"], plant.m(), plant.r(), where + " D_K");
      K.label = to_string(kind);
      o.closed_loop_radius = spectral_radius(interconnection_matrix(plant, K));
      o.controller = std::move(K);
    }
    out.push_back(std::move(o));
  }
  return out;
}

SimulationResult simulate(const ExperimentConfig& cfg,
                          const std::vector<SynthesisOutcome>& outcomes,
                          const std::optional<fs::path>& trace_dir,
                          unsigned workers) {
  const StateSpacePlant& plant = cfg.plant;
  const int T = cfg.horizon;

  SimulationResult result;
  std::vector<const LinearController*> causal;
  for (const SynthesisOutcome& o : outcomes) {
    if (o.controller) {
      result.controllers.push_back(o.kind);
      causal.push_back(&*o.controller);
    }
  }
  const bool with_noncausal = cfg.wants(ControllerKind::kNoncausal);
  if (with_noncausal) result.controllers.push_back(ControllerKind::kNoncausal);
  const std::size_t n_ctrl = result.controllers.size();
  const std::size_t n_seed = cfg.seeds.size();

  const NoncausalSolver solver(plant, Horizon(T));
  std::vector<SummaryRow> rows(n_ctrl * n_seed);
  std::vector<Mat> cumulative(n_seed);

  std::mutex io_mutex;
  auto run_seed = [&](std::size_t s) {
    const std::uint64_t seed = cfg.seeds[s];
    const Mat w = generate_disturbance(seeded(cfg.w, seed), T, plant.p(),
                                       StreamRole::kDriving);
    const Mat v = generate_disturbance(seeded(cfg.v, seed), T, plant.r(),
                                       StreamRole::kMeasurement);
    const NoncausalSolution clairvoyant = solver.solve(w);
    const double ew = energy(w);
    const double pw = pathlength(w);
    const double ev = energy(v);
    Mat cum(T + 1, n_ctrl);
    for (std::size_t c = 0; c < n_ctrl; ++c) {
      const SimulationTrace tr =
          c < causal.size() ? rollout(plant, *causal[c], w, v)
                            : rollout_open_loop(plant, clairvoyant.u_star, w, v);
      SummaryRow& row = rows[c * n_seed + s];
      row.kind = result.controllers[c];
      row.seed = seed;
      row.total_cost = tr.total_cost;
      row.noncausal_cost = clairvoyant.cost;
      row.regret = tr.total_cost - clairvoyant.cost;
      row.energy_w = ew;
      row.pathlength_w = pw;
      row.energy_v = ev;
      double running = 0.0;
      for (int t = 0; t <= T; ++t) {
        running += tr.stage_costs(t);
        cum(t, static_cast<Eigen::Index>(c)) = running;
      }
      if (trace_dir) {
        const fs::path path =
            *trace_dir / (std::string(to_string(row.kind)) + "_seed" +
                          std::to_string(seed) + ".csv");
        std::lock_guard<std::mutex> lock(io_mutex);
        write_trace(path, plant, tr);
      }
    }
    cumulative[s] = std::move(cum);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_seed));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t s = next++; s < n_seed; s = next++) {
      try {
        run_seed(s);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // Aggregate in seed order so the sums do not depend on scheduling.
  result.rows = std::move(rows);
  result.mean_cumulative_cost = Mat::Zero(T + 1, n_ctrl);
  for (const Mat& cum : cumulative) result.mean_cumulative_cost += cum;
  result.mean_cumulative_cost /= static_cast<double>(n_seed);
  for (std::size_t c = 0; c < n_ctrl; ++c) {
    std::vector<double> totals;
    for (std::size_t s = 0; s < n_seed; ++s) {
      totals.push_back(result.rows[c * n_seed + s].total_cost);
    }
    result.median_cost.push_back(median(totals));
  }
  return result;
}

std::vector<VerifyEntry> verify(const ExperimentConfig& cfg) {
  const StateSpacePlant& plant = cfg.plant;
  const int T = cfg.verify_horizon;
  const int instances = cfg.verify_instances;
  std::vector<VerifyEntry> report;
  auto at_most = [&](const std::string& check, double value, double bound) {
    report.push_back({check, value, "<= " + short_number(bound), value <= bound});
  };
  auto at_least = [&](const std::string& check, double value, double bound) {
    report.push_back({check, value, ">= " + short_number(bound), value >= bound});
  };
  auto failed = [&](const std::string& check, const std::string& why) {
    report.push_back({check, kNaN, "error: " + why, false});
  };

  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  auto random_signal = [&](int steps, int dim) {
    Mat s(steps, dim);
    for (int t = 0; t < steps; ++t) {
      for (int j = 0; j < dim; ++j) s(t, j) = gauss(rng);
    }
    return s;
  };
  std::vector<Complex> points;
  for (int k = 0; k < 64; ++k) points.push_back(std::polar(1.0, angle(rng)));

  try {
    at_most("factor.canonical", verify_factor(canonical_factor(plant), plant, 0.0, 512), 1e-6);
  } catch (const std::exception& e) {
    failed("factor.canonical", e.what());
  }

  const NoncausalSolver solver(plant, Horizon(T));
  for (RegretMode mode : {RegretMode::kEnergy, RegretMode::kPathlength}) {
    const std::string tag = std::string("regret.") + to_string(mode);
    try {
      const RegretCertificate cert = optimal_regret(plant, mode, cfg.tolerance);
      report.push_back({tag + ".gamma_star", cert.gamma, "reported", true});
      const FeasibilityReport& f = cert.feasibility;
      at_most(tag + ".control_dare_residual", f.control.residual, 1e-8);
      at_most(tag + ".estimation_dare_residual", f.estimation.residual, 1e-8);
      const SyntheticPlant at_star = build_synthetic(plant, mode, cert.gamma);
      at_most(tag + ".factor", verify_factor(at_star.factor, plant, cert.gamma, 512), 1e-6);

      const double gamma = 1.05 * cert.gamma;
      const SyntheticPlant synthetic = build_synthetic(plant, mode, gamma);
      at_most(tag + ".reduction_identity",
              reduction_identity_errors(synthetic, plant, points).max(), 1e-8);

      const LinearController K = synthesize_regret_controller(plant, mode, gamma);
      at_most(tag + ".worst_case_eigenvalue",
              regret_worst_case_eigenvalue(plant, K, mode, gamma, Horizon(T)), 1e-6);
      at_most(tag + ".worst_case_eigenvalue_embedded",
              regret_worst_case_eigenvalue_embedded(plant, K, mode, gamma, Horizon(T), T),
              1e-6);
      int satisfied = 0;
      for (int i = 0; i < instances; ++i) {
        const Mat w = random_signal(T, plant.p());
        const Mat v = random_signal(T, plant.r());
        if (assess(rollout(plant, K, w, v), solver, gamma, mode).bound_satisfied) {
          ++satisfied;
        }
      }
      at_least(tag + ".monte_carlo_fraction",
               static_cast<double>(satisfied) / instances, 1.0);
    } catch (const std::exception& e) {
      failed(tag, e.what());
    }
  }

  try {
    const HinfSystem system = to_hinf_system(plant);
    const HinfOptimum best = hinf_optimal(system, cfg.tolerance);
    report.push_back({"hinf.gamma_star", best.gamma, "reported", true});
    const FeasibilityReport f = hinf_feasible(scale_system(system, best.gamma));
    at_most("hinf.control_dare_residual", f.control.residual, 1e-8);
    at_most("hinf.estimation_dare_residual", f.estimation.residual, 1e-8);
    const double norm =
        operator_norm(closed_loop_operator(plant, best.controller, Horizon(400)));
    at_most("hinf.closed_loop_norm_over_gamma", norm / best.gamma, 1.0 + cfg.tolerance);
  } catch (const std::exception& e) {
    failed("hinf", e.what());
  }

  {
    const CompetitiveRatio cr = zero_competitive_ratio(plant, Horizon(400));
    if (cr.a_stable) {
      report.push_back({"competitive_ratio.zero", cr.ratio, "reported", true});
    } else {
      const double grow = zero_competitive_ratio(plant, Horizon(40)).ratio /
                          zero_competitive_ratio(plant, Horizon(20)).ratio;
      at_least("competitive_ratio.zero_growth_20_to_40", grow, 1.8);
    }
  }

  try {
    const NonexistenceWitness wit =
        nonexistence_witness(plant, zero_controller(plant),
                             NonexistenceClaim::kPathlengthBoth, Horizon(T));
    at_least("witness.pathlength_regret_growth", wit.growth_ratio(), 1.8);
    at_most("witness.pathlength_rhs_change", std::abs(wit.rhs_ratio() - 1.0), 0.05);
  } catch (const std::exception& e) {
    failed("witness.pathlength", e.what());
  }

  {
    const double bound = theorem3_bound(plant, Horizon(T));
    const LinearController zero = zero_controller(plant);
    const Mat quiet = Mat::Zero(T, plant.r());
    int satisfied = 0;
    for (int i = 0; i < instances; ++i) {
      const Mat w = random_signal(T, plant.p());
      const double regret = rollout(plant, zero, w, quiet).total_cost - solver.solve(w).cost;
      if (regret <= bound * bound * energy(w) * (1.0 + 1e-6)) ++satisfied;
    }
    report.push_back({"zero_regret.bound", bound, "reported", true});
    at_least("zero_regret.bound_fraction", static_cast<double>(satisfied) / instances,
             1.0);
  }

  {
    const int steps = std::min(T, 60);
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
      const Mat w = random_signal(steps, plant.p());
      const double a = noncausal_optimal(plant, w, NoncausalMethod::kOperatorFormula).cost;
      const double b = noncausal_optimal(plant, w, NoncausalMethod::kLeastSquares).cost;
      worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
    }
    at_most("oracle.noncausal_relative_gap", worst, 1e-8);
  }
  return report;
}

int run_synthesize(const ExperimentConfig& cfg, const fs::path& out, std::ostream& log) {
  ensure_dir(out);
  const std::vector<SynthesisOutcome> outcomes = synthesize_controllers(cfg);
  CsvFile summary(out / "synthesis_summary.csv");
  summary.row({"controller", "status", "gamma", "state_dim", "closed_loop_radius",
               "control_status", "control_residual", "estimation_status",
               "estimation_residual", "coupling_radius", "message"});
  for (const SynthesisOutcome& o : outcomes) {
    json doc;
    doc["controller"] = to_string(o.kind);
    doc["status"] = o.status;
    doc["message"] = o.message;
    doc["gamma"] = number_or_null(o.gamma);
    if (o.controller) {
      const LinearController& K = *o.controller;
      doc["state_dim"] = K.state_dim();
      doc["A_K"] = matrix_json(K.A_K);
      doc["B_K"] = matrix_json(K.B_K);
      doc["C_K"] = matrix_json(K.C_K);
      doc["D_K"] = matrix_json(K.D_K);
    }
    doc["certificate"] = certificate_json(o);
    const fs::path path = out / ("controller_" + std::string(to_string(o.kind)) + ".json");
    std::ofstream file(path);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    file << doc.dump(2) << '\n';
    file.close();
    if (!file) throw IoError("failed writing " + path.string());

    const auto fmt = [](double x) { return std::isnan(x) ? std::string() : format_double(x); };
    summary.row({to_string(o.kind), o.status, fmt(o.gamma),
                 o.controller ? std::to_string(o.controller->state_dim()) : "",
                 fmt(o.closed_loop_radius),
                 o.report ? to_string(o.report->control.status) : "",
                 o.report ? format_double(o.report->control.residual) : "",
                 o.report ? to_string(o.report->estimation.status) : "",
                 o.report ? format_double(o.report->estimation.residual) : "",
                 o.report ? format_double(o.report->spectral_radius_PcPe) : "",
                 o.message});
    log << to_string(o.kind) << ": " << o.status;
    if (!std::isnan(o.gamma)) log << "  gamma* = " << format_double(o.gamma);
    if (o.controller) log << "  closed-loop radius = " << o.closed_loop_radius;
    if (!o.message.empty()) log << "  (" << o.message << ")";
    log << '\n';
  }
  summary.close();
  return 0;
}

int run_simulate(const ExperimentConfig& cfg, const fs::path& out, std::ostream& log) {
  ensure_dir(out);
  const std::vector<SynthesisOutcome> outcomes =
      cfg.controller_dir ? load_controllers(cfg, *cfg.controller_dir)
                         : synthesize_controllers(cfg);
  for (const SynthesisOutcome& o : outcomes) {
    if (!o.controller) {
      log << "skipping " << to_string(o.kind) << ": " << o.status
          << (o.message.empty() ? "" : " (" + o.message + ")") << '\n';
    }
  }
  std::optional<fs::path> trace_dir;
  if (cfg.write_traces) {
    trace_dir = out / "traces";
    ensure_dir(*trace_dir);
  }
  const SimulationResult result = simulate(cfg, outcomes, trace_dir);

  CsvFile summary(out / "summary.csv");
  summary.row({"controller", "seed", "total_cost", "noncausal_cost", "regret",
               "energy_w", "pathlength_w", "energy_v"});
  for (const SummaryRow& r : result.rows) {
    summary.row({to_string(r.kind), std::to_string(r.seed), format_double(r.total_cost),
                 format_double(r.noncausal_cost), format_double(r.regret),
                 format_double(r.energy_w), format_double(r.pathlength_w),
                 format_double(r.energy_v)});
  }
  summary.close();

  CsvFile plot(out / "plotdata.csv");
  std::vector<std::string> header{"t"};
  for (ControllerKind k : result.controllers) header.push_back(to_string(k));
  plot.row(header);
  const Mat& cum = result.mean_cumulative_cost;
  for (Eigen::Index t = 0; t < cum.rows(); ++t) {
    std::vector<std::string> f{std::to_string(t)};
    for (Eigen::Index c = 0; c < cum.cols(); ++c) f.push_back(format_double(cum(t, c)));
    plot.row(f);
  }
  plot.close();

  log << "median total cost over " << cfg.seeds.size() << " seeds (T = " << cfg.horizon
      << ")\n";
  for (std::size_t c = 0; c < result.controllers.size(); ++c) {
    log << "  " << to_string(result.controllers[c]) << ": "
        << format_double(result.median_cost[c]) << '\n';
  }
  return 0;
}

int run_verify(const ExperimentConfig& cfg, const fs::path& out, std::ostream& log) {
  ensure_dir(out);
  const std::vector<VerifyEntry> entries = verify(cfg);
  CsvFile csv(out / "verify_report.csv");
  csv.row({"check", "value", "rule", "passed"});
  int failures = 0;
  for (const VerifyEntry& e : entries) {
    csv.row({e.check, format_double(e.value), e.rule, e.passed ? "true" : "false"});
    log << pass_word(e.passed) << "  " << e.check << " = " << format_double(e.value)
        << "  (" << e.rule << ")\n";
    if (!e.passed) ++failures;
  }
  csv.close();
  log << entries.size() - failures << "/" << entries.size() << " checks passed\n";
  return 0;
}

}  // namespace mfregret::cli
