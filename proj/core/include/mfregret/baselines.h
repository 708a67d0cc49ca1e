#pragma once

#include <memory>
#include <stdexcept>

#include "mfregret/hinf.h"
#include "mfregret/plant.h"

namespace mfregret {

/// Steady-state LQG controller: Kalman filter with process covariance
/// B_w B_wᵀ and measurement covariance I, LQR with weights (Q, I), in
/// current-measurement form (the estimate is updated with y_t before u_t is
/// applied). Throws std::runtime_error when either Riccati equation has no
/// stabilizing solution.
LinearController lqg_controller(const StateSpacePlant& plant);

/// u ≡ 0, with no internal state.
LinearController zero_controller(const StateSpacePlant& plant);

enum class NoncausalMethod { kOperatorFormula, kLeastSquares };

struct NoncausalSolution {
  Mat u_star;  // T×m
  double cost = 0.0;
  NoncausalMethod method = NoncausalMethod::kOperatorFormula;
};

/// Clairvoyant optimum min_u ‖Fu + Gw‖² + ‖u‖² for a T×p disturbance.
/// kOperatorFormula applies u = −(I + FᵀF)⁻¹FᵀGw through a Cholesky factor;
/// kLeastSquares solves the stacked problem [F; I]u ≈ [−Gw; 0] by QR.
NoncausalSolution noncausal_optimal(
    const StateSpacePlant& plant, const Mat& w,
    NoncausalMethod method = NoncausalMethod::kOperatorFormula);

/// Operator-formula solver with F, G and the Cholesky factor of I + FᵀF
/// built once for a fixed horizon. Immutable after construction.
class NoncausalSolver {
 public:
  NoncausalSolver(const StateSpacePlant& plant, const Horizon& horizon);

  NoncausalSolution solve(const Mat& w) const;
  int steps() const { return steps_; }

 private:
  int steps_;
  int m_;
  Mat F_;
  Mat G_;
  std::shared_ptr<const Eigen::LLT<Mat>> normal_;
};

struct CompetitiveRatio {
  /// 1 + ‖F_T‖², the competitive ratio of the zero controller at horizon T.
  double ratio = 0.0;
  /// False when A has an eigenvalue on or outside the unit circle, in which
  /// case the ratio grows without bound in T.
  bool a_stable = true;
};

CompetitiveRatio zero_competitive_ratio(const StateSpacePlant& plant,
                                        const Horizon& horizon);

/// Lower block-triangular Δ₂ with Δ₂ᵀΔ₂ = I + FᵀF (finite-horizon causal
/// factor, obtained by Cholesky of the time-reversed matrix).
Mat causal_left_factor(const Mat& M);

/// ‖Δ₂⁻ᵀFᵀG‖ at horizon T: the smallest γ for which the zero controller's
/// regret stays below γ²‖w‖².
double theorem3_bound(const StateSpacePlant& plant, const Horizon& horizon);

enum class NonexistenceClaim {
  kCompetitiveRatio,      // bounded competitive ratio
  kPathlengthBoth,        // regret ≤ γ²(‖D w‖² + ‖D v‖²)
  kEnergyWPathlengthV,    // regret ≤ γ²(‖w‖² + ‖D v‖²)
};

const char* to_string(NonexistenceClaim claim);

/// The claim cannot be refuted for this controller (for example the zero
/// controller is competitive on a stable plant).
class NotDemonstrable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-horizon counterexample to a performance claim.
///
/// For a controller that reacts to some measurement, the instance is w = 0
/// with a unit measurement impulse at t = 0: the online cost is positive and
/// the clairvoyant cost is zero. For the zero controller the instance is
/// evaluated at T and 2T and `value_*` records the quantity that must stay
/// bounded for the claim to hold (regret for kPathlengthBoth, the
/// competitive ratio for kCompetitiveRatio, regret/‖w‖² for
/// kEnergyWPathlengthV), next to the claim's right-hand side.
struct NonexistenceWitness {
  NonexistenceClaim claim = NonexistenceClaim::kCompetitiveRatio;
  bool zero_controller_branch = false;
  Mat w;  // T×p
  Mat v;  // T×r
  double online_cost = 0.0;
  double offline_cost = 0.0;
  double regret = 0.0;
  /// Complexity measure on the claim's right-hand side, without γ².
  double bound_rhs = 0.0;

  double value_T = 0.0;
  double value_2T = 0.0;
  double rhs_T = 0.0;
  double rhs_2T = 0.0;
  double growth_ratio() const { return value_2T / value_T; }
  double rhs_ratio() const { return rhs_T == 0.0 ? 1.0 : rhs_2T / rhs_T; }
};

/// Throws NotDemonstrable when the claim holds for `controller`.
NonexistenceWitness nonexistence_witness(const StateSpacePlant& plant,
                                         const LinearController& controller,
                                         NonexistenceClaim claim,
                                         const Horizon& horizon);

}  // namespace mfregret
