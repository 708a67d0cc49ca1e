#include "mfregret_cli/config.h"

#include <algorithm>
#include <fstream>

namespace mfregret::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

double number(const json& node, const std::string& field) {
  if (!node.is_number()) fail(field, "expected a number");
  return node.get<double>();
}

int positive_int(const json& node, const std::string& field) {
  if (!node.is_number_integer() || node.get<long long>() < 1) {
    fail(field, "expected a positive integer");
  }
  return node.get<int>();
}

Mat matrix(const json& node, const std::string& field) {
  // A bare number is a 1×1 matrix, a flat list is a column.
  if (node.is_number()) return Mat::Constant(1, 1, node.get<double>());
  if (!node.is_array() || node.empty()) {
    fail(field, "expected a number or a non-empty list of rows");
  }
  if (!node.front().is_array()) {
    Mat col(node.size(), 1);
    for (std::size_t i = 0; i < node.size(); ++i) {
      col(static_cast<Eigen::Index>(i), 0) =
          number(node[i], field + "[" + std::to_string(i) + "]");
    }
    return col;
  }
  const std::size_t cols = node.front().size();
  Mat out(node.size(), cols);
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string row = field + "[" + std::to_string(i) + "]";
    if (!node[i].is_array() || node[i].size() != cols) {
      fail(row, "rows must be lists of equal length");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          number(node[i][j], row + "[" + std::to_string(j) + "]");
    }
  }
  return out;
}

void parse_plant(const json& node, ExperimentConfig& cfg) {
  if (node.is_string()) {
    return parse_plant(json{{"preset", node}}, cfg);
  }
  if (!node.is_object()) fail("plant", "expected a preset name or an object");
  if (node.contains("preset")) {
    if (!node["preset"].is_string()) fail("plant.preset", "expected a string");
    const auto name = node["preset"].get<std::string>();
    if (name == "double-integrator") {
      const double dt = node.contains("dt") ? number(node["dt"], "plant.dt") : 0.1;
      if (!(dt > 0.0)) fail("plant.dt", "must be positive");
      cfg.plant = double_integrator(dt);
    } else if (name == "s1") {
      const Mat one = Mat::Identity(1, 1);
      cfg.plant = make_plant(Mat::Constant(1, 1, 0.5), one, one, one, one);
    } else {
      fail("plant.preset", "unknown preset '" + name +
                               "' (expected double-integrator or s1)");
    }
    cfg.plant_name = name;
    return;
  }
  for (const char* key : {"A", "Bu", "Bw", "C", "Q"}) {
    if (!node.contains(key)) {
      fail(std::string("plant.") + key,
           "missing (inline plants need A, Bu, Bw, C and Q)");
    }
  }
  try {
    cfg.plant = make_plant(matrix(node["A"], "plant.A"),
                           matrix(node["Bu"], "plant.Bu"),
                           matrix(node["Bw"], "plant.Bw"),
                           matrix(node["C"], "plant.C"),
                           matrix(node["Q"], "plant.Q"));
  } catch (const std::invalid_argument& e) {
    fail("plant", e.what());
  }
  cfg.plant_name = "inline";
}

DisturbanceSpec parse_disturbance(const json& node, const std::string& field,
                                  int horizon) {
  DisturbanceSpec spec;
  if (node.is_null()) return spec;
  if (!node.is_object()) fail(field, "expected an object");
  std::string kind = "gaussian";
  if (node.contains("kind")) {
    if (!node["kind"].is_string()) fail(field + ".kind", "expected a string");
    kind = node["kind"].get<std::string>();
  }
  if (kind == "gaussian") {
    spec.kind = DisturbanceKind::kGaussianIID;
  } else if (kind == "impulse") {
    spec.kind = DisturbanceKind::kImpulse;
    spec.magnitude = 1000.0;
    spec.impulse_time = horizon / 2;
  } else if (kind == "random-walk") {
    spec.kind = DisturbanceKind::kRandomWalk;
  } else if (kind == "constant") {
    spec.kind = DisturbanceKind::kConstant;
  } else {
    fail(field + ".kind", "unknown kind '" + kind +
                              "' (expected gaussian, impulse, random-walk or "
                              "constant)");
  }
  if (node.contains("magnitude")) {
    spec.magnitude = number(node["magnitude"], field + ".magnitude");
  }
  if (node.contains("impulse_time")) {
    const json& t = node["impulse_time"];
    if (!t.is_number_integer() || t.get<long long>() < 0 ||
        t.get<long long>() >= horizon) {
      fail(field + ".impulse_time", "expected an integer in [0, horizon)");
    }
    spec.impulse_time = t.get<int>();
  }
  return spec;
}

std::vector<std::uint64_t> parse_seeds(const json& node) {
  std::vector<std::uint64_t> seeds;
  if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (!node[i].is_number_integer() || node[i].get<long long>() < 0) {
        fail("seeds[" + std::to_string(i) + "]",
             "expected a non-negative integer");
      }
      seeds.push_back(node[i].get<std::uint64_t>());
    }
  } else if (node.is_object()) {
    const int count =
        node.contains("count") ? positive_int(node["count"], "seeds.count") : 20;
    std::uint64_t first = 0;
    if (node.contains("first")) {
      if (!node["first"].is_number_integer() || node["first"].get<long long>() < 0) {
        fail("seeds.first", "expected a non-negative integer");
      }
      first = node["first"].get<std::uint64_t>();
    }
    for (int i = 0; i < count; ++i) seeds.push_back(first + i);
  } else {
    fail("seeds", "expected a list or {\"first\", \"count\"}");
  }
  if (seeds.empty()) fail("seeds", "at least one seed is required");
  return seeds;
}

}  // namespace

const char* to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kLqg: return "lqg";
    case ControllerKind::kHinf: return "hinf";
    case ControllerKind::kRegretEnergy: return "regret-energy";
    case ControllerKind::kRegretPathlength: return "regret-pathlength";
    case ControllerKind::kZero: return "zero";
    case ControllerKind::kNoncausal: return "noncausal";
  }
  return "unknown";
}

const std::vector<ControllerKind>& all_controllers() {
  static const std::vector<ControllerKind> kinds = {
      ControllerKind::kLqg,          ControllerKind::kHinf,
      ControllerKind::kRegretEnergy, ControllerKind::kRegretPathlength,
      ControllerKind::kZero,         ControllerKind::kNoncausal};
  return kinds;
}

std::optional<ControllerKind> parse_controller(std::string_view name) {
  for (ControllerKind kind : all_controllers()) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

bool ExperimentConfig::wants(ControllerKind kind) const {
  return std::find(controllers.begin(), controllers.end(), kind) !=
         controllers.end();
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  static const std::vector<std::string> known = {
      "plant",     "horizon",         "seeds",  "w",
      "v",         "controllers",     "tolerance", "traces",
      "controller_dir", "output",     "verify"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      fail(item.key(), "unknown key");
    }
  }

  ExperimentConfig cfg;
  if (!doc.contains("plant")) fail("plant", "missing (required)");
  parse_plant(doc["plant"], cfg);

  if (doc.contains("horizon")) cfg.horizon = positive_int(doc["horizon"], "horizon");
  if (doc.contains("seeds")) {
    cfg.seeds = parse_seeds(doc["seeds"]);
  } else {
    cfg.seeds = parse_seeds(json::object());
  }
  cfg.w = parse_disturbance(doc.value("w", json()), "w", cfg.horizon);
  cfg.v = parse_disturbance(doc.value("v", json()), "v", cfg.horizon);

  if (doc.contains("controllers")) {
    const json& list = doc["controllers"];
    if (!list.is_array()) fail("controllers", "expected a list of names");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string field = "controllers[" + std::to_string(i) + "]";
      if (!list[i].is_string()) fail(field, "expected a string");
      const auto kind = parse_controller(list[i].get<std::string>());
      if (!kind) fail(field, "unknown controller '" + list[i].get<std::string>() + "'");
      if (!cfg.wants(*kind)) cfg.controllers.push_back(*kind);
    }
    if (cfg.controllers.empty()) fail("controllers", "at least one controller is required");
  } else {
    cfg.controllers = all_controllers();
  }
  // Fixed column order regardless of how the list was written.
  std::vector<ControllerKind> ordered;
  for (ControllerKind kind : all_controllers()) {
    if (cfg.wants(kind)) ordered.push_back(kind);
  }
  cfg.controllers = ordered;

  if (doc.contains("tolerance")) {
    cfg.tolerance = number(doc["tolerance"], "tolerance");
    if (!(cfg.tolerance > 0.0 && cfg.tolerance < 0.5)) {
      fail("tolerance", "expected a value in (0, 0.5)");
    }
  }
  if (doc.contains("traces")) {
    if (!doc["traces"].is_boolean()) fail("traces", "expected true or false");
    cfg.write_traces = doc["traces"].get<bool>();
  }
  if (doc.contains("controller_dir")) {
    if (!doc["controller_dir"].is_string()) fail("controller_dir", "expected a path");
    cfg.controller_dir = doc["controller_dir"].get<std::string>();
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) fail("output", "expected a path");
    cfg.output_dir = doc["output"].get<std::string>();
  }
  if (doc.contains("verify")) {
    const json& v = doc["verify"];
    if (!v.is_object()) fail("verify", "expected an object");
    if (v.contains("horizon")) cfg.verify_horizon = positive_int(v["horizon"], "verify.horizon");
    if (v.contains("instances")) {
      cfg.verify_instances = positive_int(v["instances"], "verify.instances");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

}  // namespace mfregret::cli
