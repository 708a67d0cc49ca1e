#pragma once

#include "mfregret/linalg.h"
#include "mfregret/plant.h"
#include "mfregret/riccati.h"

namespace mfregret {

enum class FactorKind {
  /// Δ with I + F F* = Δ Δ*, realized as (I + K_f (zI − A_f)⁻¹ B_f) Σ^{1/2}.
  kCanonical,
  /// Δ₂ with γ² I + G*(I + F F*)⁻¹ G = Δ₂* Δ₂.
  kEnergy,
  /// Δ₂ with γ² D_p* D_p + G*(I + F F*)⁻¹ G = Δ₂* Δ₂.
  kPathlength,
};

/// State-space realization of a causal, causally invertible spectral factor.
/// Energy/pathlength factors read Σ^{1/2}(I + K_f (zI − A_f)⁻¹ B_f); the
/// inverse has state matrix A_f − B_f K_f in every case.
struct SpectralFactor {
  Mat A_f;
  Mat B_f;
  Mat K_f;
  Mat Sigma_f;
  FactorKind kind = FactorKind::kCanonical;
  double gamma = 0.0;
  /// Riccati solution behind the factor.
  DareSolution riccati;

  /// Δ(z)
  CMat evaluate(Complex z) const;
  /// Δ(z)⁻¹ through the inverse realization.
  CMat evaluate_inverse(Complex z) const;
};

/// Canonical factor of I + F F* from the filtering Riccati equation
/// P = B_u B_uᵀ + A P Aᵀ − A P Lᵀ (I + L P Lᵀ)⁻¹ L P Aᵀ,
/// K = A P Lᵀ Σ⁻¹, Σ = I + L P Lᵀ. Throws std::runtime_error when the
/// Riccati equation has no stabilizing solution.
SpectralFactor canonical_factor(const StateSpacePlant& plant);

/// Δ₂ for the energy regret reduction, realized on Ã = A − K L.
SpectralFactor energy_factor(const StateSpacePlant& plant, double gamma);

/// Δ₂ for the pathlength regret reduction, realized on the augmented pair
/// Ã = blockdiag(A − K L, 0_p), B̃_w = [B_w; −I_p] (state dimension n + p).
SpectralFactor pathlength_factor(const StateSpacePlant& plant, double gamma);

/// Maximum over n_freq unit-circle points of
/// ‖lhs(z) − Δ(z)Δ(z)*‖₂ / ‖lhs(z)‖₂ (canonical) or
/// ‖lhs(z) − Δ(z)*Δ(z)‖₂ / ‖lhs(z)‖₂ (energy, pathlength), where lhs is the
/// spectrum evaluated directly from the plant. The factor's kind selects the
/// identity; `gamma` is ignored for the canonical factor.
double verify_factor(const SpectralFactor& factor,
                     const StateSpacePlant& plant, double gamma, int n_freq);

/// Direct evaluation of the spectrum a factor of `kind` must reproduce.
CMat factor_target_spectrum(const StateSpacePlant& plant, FactorKind kind,
                            double gamma, Complex z);

}  // namespace mfregret
