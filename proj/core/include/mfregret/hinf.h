#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mfregret/linalg.h"
#include "mfregret/plant.h"
#include "mfregret/riccati.h"

namespace mfregret {

/// (A, B_u, B_w, C, L) data of a measurement-feedback H∞ problem:
/// x_{t+1} = A x + B_u u + B_w w, y = C x + v, s = L x, with the closed-loop
/// map (w, v) → (s, u).
struct HinfSystem {
  Mat A;
  Mat Bu;
  Mat Bw;
  Mat C;
  Mat L;

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(Bu.cols()); }
  int p() const { return static_cast<int>(Bw.cols()); }
  int r() const { return static_cast<int>(C.rows()); }
  int q() const { return static_cast<int>(L.rows()); }
};

HinfSystem to_hinf_system(const StateSpacePlant& plant);

/// Measurement-feedback controller
///   ξ_{t+1} = A_K ξ_t + B_K y_t,   u_t = C_K ξ_t + D_K y_t,   ξ₀ = 0.
struct LinearController {
  Mat A_K;
  Mat B_K;
  Mat C_K;
  Mat D_K;
  std::string label;

  int state_dim() const { return static_cast<int>(A_K.rows()); }
};

/// Outcome of the level-1 existence test. `feasible` holds exactly when both
/// Riccati solutions are stabilizing and positive semidefinite and all five
/// conditions below hold.
struct FeasibilityReport {
  bool feasible = false;
  bool control_stable = false;       // ρ(A − [B_u B_w] K_c) < 1 (or marginal)
  bool control_inertia = false;      // R_c has (m, p) positive/negative
  bool estimation_stable = false;    // ρ(A − K_e [C; L]) < 1
  bool estimation_inertia = false;   // R_e has (r, q) positive/negative
  bool coupling = false;             // ρ(P_c P_e) < 1
  double spectral_radius_PcPe = 0.0;
  DareSolution control;
  DareSolution estimation;

  const Mat& Pc() const { return control.P; }
  const Mat& Pe() const { return estimation.P; }
  const Mat& Kc() const { return control.K; }
  const Mat& Ke() const { return estimation.K; }
  const Mat& Rc() const { return control.R_cl; }
  const Mat& Re() const { return estimation.R_cl; }
};

struct FeasibilityOptions {
  /// Accept a control Riccati solution whose closed loop has eigenvalues on
  /// the unit circle (DareStatus::kMarginal). The pathlength regret problem
  /// needs this: its full-information game is exactly tight at z = 1.
  bool accept_marginal_control = false;
};

/// Existence test for a causal controller with ‖T_K‖ < 1 (level one).
/// Never throws for well-formed input; failures are reported as flags.
FeasibilityReport hinf_feasible(const HinfSystem& system,
                                const FeasibilityOptions& options = {});

/// B̂_w = γ⁻¹ B_w, Ĉ = γ C. Level-one feasibility of the result is
/// equivalent to ‖T_K‖ < γ in the original system.
HinfSystem scale_system(const HinfSystem& system, double gamma);

/// Central level-one controller built from a feasible report on `system`.
/// The returned controller consumes `system`'s own measurement.
LinearController central_controller(const HinfSystem& system,
                                    const FeasibilityReport& report);

/// Multiplies the measurement input by `factor`: B_K ← factor·B_K,
/// D_K ← factor·D_K.
LinearController scale_measurement(LinearController controller, double factor);

/// Central controller achieving ‖T_K‖ < γ on the original system. Throws
/// std::runtime_error when γ is infeasible.
LinearController hinf_central_controller(const HinfSystem& system,
                                         double gamma);

struct BisectionStep {
  double gamma = 0.0;
  bool feasible = false;
};

/// Bracketing search for the smallest feasible level of a monotone test.
struct LevelSearch {
  double gamma = 0.0;        // feasible endpoint
  double gamma_lower = 0.0;  // infeasible endpoint (0 when none was found)
  std::vector<BisectionStep> trace;
};

struct LevelSearchOptions {
  double rel_tol = 1e-3;
  double start = 1.0;
  double floor = 1e-6;
  double cap = 1152921504606846976.0;  // 2⁶⁰
};

/// Doubling from `start` until feasible (or halving until infeasible), then
/// bisection until (γ_hi − γ_lo)/γ_lo ≤ rel_tol. Throws std::runtime_error if
/// nothing up to `cap` is feasible. If every level down to `floor` is
/// feasible, returns the floor with gamma_lower = 0.
LevelSearch search_level(const std::function<bool(double)>& feasible,
                         const LevelSearchOptions& options = {});

struct HinfOptimum {
  double gamma = 0.0;
  LinearController controller;
  LevelSearch search;
};

HinfOptimum hinf_optimal(const HinfSystem& system, double tol = 1e-3);

/// Finite-horizon closed-loop map (w, v) → (s, u) assembled column by column
/// from impulse responses. Rows: [s₁..s_T ; u₀..u_{T−1}], columns:
/// [w₀..w_{T−1} ; v₀..v_{T−1}].
BlockOperator closed_loop_operator(const StateSpacePlant& plant,
                                   const LinearController& controller,
                                   const Horizon& horizon);

/// Rectangular variant: inputs on [0, input_steps), outputs over
/// output_steps ≥ input_steps steps. Same row/column layout.
Mat closed_loop_response(const StateSpacePlant& plant,
                         const LinearController& controller, int input_steps,
                         int output_steps);

/// State matrix of the plant/controller interconnection.
Mat interconnection_matrix(const StateSpacePlant& plant,
                           const LinearController& controller);

}  // namespace mfregret
