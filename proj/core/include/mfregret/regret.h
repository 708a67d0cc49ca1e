#pragma once

#include <optional>
#include <vector>

#include "mfregret/factor.h"
#include "mfregret/hinf.h"
#include "mfregret/plant.h"

namespace mfregret {

/// Complexity measure the regret is normalized by.
enum class RegretMode {
  kEnergy,      // ‖w‖² + ‖v‖²
  kPathlength,  // ‖D_p w‖² + ‖v‖²
};

const char* to_string(RegretMode mode);

/// Synthetic system whose level-one H∞ problem encodes the regret condition
/// at level γ. The state is (x, ζ) with ζ the state of Δ₂⁻¹, so the dimension
/// is 2n in energy mode and 2n + p in pathlength mode.
struct SyntheticPlant {
  Mat A;
  Mat Bu;
  Mat Bw;
  Mat C;
  Mat L;
  RegretMode mode = RegretMode::kEnergy;
  double gamma = 0.0;
  SpectralFactor factor;

  int dim() const { return static_cast<int>(A.rows()); }
  HinfSystem system() const { return {A, Bu, Bw, C, L}; }
};

SyntheticPlant build_energy_synthetic(const StateSpacePlant& plant,
                                      double gamma);
SyntheticPlant build_pathlength_synthetic(const StateSpacePlant& plant,
                                          double gamma);
SyntheticPlant build_synthetic(const StateSpacePlant& plant, RegretMode mode,
                               double gamma);

/// Level-one H∞ feasibility of the synthetic plant. A failed spectral
/// factorization is reported as infeasible rather than thrown.
FeasibilityReport regret_feasible(const StateSpacePlant& plant,
                                  RegretMode mode, double gamma);

/// Central controller of the synthetic plant, rescaled so that it consumes
/// the original measurement y. Throws std::runtime_error if γ is infeasible.
LinearController synthesize_regret_controller(const StateSpacePlant& plant,
                                              RegretMode mode, double gamma);

struct RegretCertificate {
  double gamma = 0.0;
  RegretMode mode = RegretMode::kEnergy;
  FeasibilityReport feasibility;
  std::optional<LinearController> controller;
  std::vector<BisectionStep> trace;
};

RegretCertificate optimal_regret(const StateSpacePlant& plant, RegretMode mode,
                                 double tol = 1e-3);

/// Finite-horizon closed-loop map of the clairvoyant controller u = K₀w,
/// K₀ = −(I + FᵀF)⁻¹FᵀG, in the layout of closed_loop_operator.
BlockOperator noncausal_transfer(const StateSpacePlant& plant,
                                 const Horizon& horizon);

/// Quadratic form of the complexity measure over the stacked (w, v):
/// the identity in energy mode, blockdiag(D_pᵀD_p, I) in pathlength mode.
Mat complexity_weight(const StateSpacePlant& plant, const Horizon& horizon,
                      RegretMode mode);

/// λ_max(T_KᵀT_K − T_K₀ᵀT_K₀ − γ²W) over the horizon. A value ≤ 0 means
/// regret ≤ γ²·complexity for every (w, v) of that length.
double regret_worst_case_eigenvalue(const StateSpacePlant& plant,
                                    const LinearController& controller,
                                    RegretMode mode, double gamma,
                                    const Horizon& horizon);

/// Same quadratic form with disturbances supported on [0, T) but costs
/// (of both the controller and the clairvoyant benchmark) accumulated over
/// T + tail steps, and a pathlength that includes the closing term
/// ‖w_{T−1}‖². This is the finite section of the infinite-horizon regret
/// inequality that the synthesis certifies.
double regret_worst_case_eigenvalue_embedded(const StateSpacePlant& plant,
                                             const LinearController& controller,
                                             RegretMode mode, double gamma,
                                             const Horizon& horizon, int tail);

/// Pointwise transfer identities between a synthetic plant and the plant it
/// was built from: F̂ = F, Ĝ = GΔ₂⁻¹, Ĥ = γH, Ĵ = γJΔ₂⁻¹. Each entry is the
/// largest ‖lhs(z) − rhs(z)‖₂ / (1 + ‖rhs(z)‖₂) over the given points.
struct ReductionErrors {
  double F = 0.0;
  double G = 0.0;
  double H = 0.0;
  double J = 0.0;

  double max() const;
};

ReductionErrors reduction_identity_errors(const SyntheticPlant& synthetic,
                                          const StateSpacePlant& plant,
                                          const std::vector<Complex>& points);

}  // namespace mfregret
