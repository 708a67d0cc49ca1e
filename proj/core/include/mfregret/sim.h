#pragma once

#include <cstdint>

#include "mfregret/baselines.h"
#include "mfregret/hinf.h"
#include "mfregret/plant.h"
#include "mfregret/regret.h"

namespace mfregret {

enum class DisturbanceKind {
  kGaussianIID,  // magnitude · N(0, 1) per entry
  kImpulse,      // magnitude in every coordinate at impulse_time, zero elsewhere
  kRandomWalk,   // prefix sums of magnitude · N(0, 1)
  kConstant,     // magnitude everywhere
  kCustom,       // `custom` verbatim
};

const char* to_string(DisturbanceKind kind);

struct DisturbanceSpec {
  DisturbanceKind kind = DisturbanceKind::kGaussianIID;
  double magnitude = 1.0;
  int impulse_time = 0;
  std::uint64_t seed = 0;
  Mat custom;  // T×dim, kCustom only
};

/// Independent random streams drawn from the same seed.
enum class StreamRole : std::uint64_t { kDriving = 1, kMeasurement = 2 };

/// Counter-based generator: entry `counter` of the stream keyed by
/// (seed, role) is a pure function of those three numbers, so sequences are
/// reproducible across platforms and independent of evaluation order.
double standard_normal(std::uint64_t seed, StreamRole role,
                       std::uint64_t counter);

/// Inverse of the standard normal CDF for u ∈ (0, 1).
double inverse_normal_cdf(double u);

/// T×dim disturbance. Throws std::invalid_argument when impulse_time is
/// outside [0, T) or a custom signal has the wrong shape.
Mat generate_disturbance(const DisturbanceSpec& spec, int T, int dim,
                         StreamRole role = StreamRole::kDriving);

struct SimulationTrace {
  Mat x;  // (T+1)×n, x₀ = 0
  Mat u;  // T×m
  Mat y;  // T×r
  Mat w;  // T×p
  Mat v;  // T×r
  Vec stage_costs;  // T+1 entries; entry t is x_tᵀQx_t + u_tᵀu_t
  double total_cost = 0.0;

  int steps() const { return static_cast<int>(u.rows()); }
};

/// Closed loop from x₀ = 0, ξ₀ = 0: y_t = Cx_t + v_t, u_t = C_Kξ_t + D_Ky_t,
/// ξ_{t+1} = A_Kξ_t + B_Ky_t, x_{t+1} = Ax_t + B_uu_t + B_ww_t.
SimulationTrace rollout(const StateSpacePlant& plant,
                        const LinearController& controller, const Mat& w,
                        const Mat& v);

/// Same recursion with a precomputed T×m input sequence, such as the
/// clairvoyant optimum u_star. The measurement is recorded but unused.
SimulationTrace rollout_open_loop(const StateSpacePlant& plant, const Mat& u,
                                  const Mat& w, const Mat& v);

struct RegretReport {
  double total_cost = 0.0;
  double noncausal_cost = 0.0;
  double regret = 0.0;
  double complexity_energy = 0.0;      // ‖w‖² + ‖v‖²
  double complexity_pathlength = 0.0;  // ‖D_p w‖² + ‖v‖²
  double bound_gamma = 0.0;
  bool bound_satisfied = false;
};

/// Regret of a finished trace against the clairvoyant cost on the same w,
/// with the check regret ≤ γ²·complexity(mode)·(1 + 1e−6). The solver must
/// match the trace length.
RegretReport assess(const SimulationTrace& trace, const NoncausalSolver& solver,
                    double gamma, RegretMode mode);

RegretReport evaluate(const StateSpacePlant& plant,
                      const LinearController& controller,
                      const DisturbanceSpec& spec_w,
                      const DisturbanceSpec& spec_v, int T, double gamma,
                      RegretMode mode);

}  // namespace mfregret
