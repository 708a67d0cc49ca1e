#include "mfregret/factor.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mfregret {

namespace {

CMat identity(Eigen::Index k) { return CMat::Identity(k, k); }

void require_stabilizing(const DareSolution& sol, const char* what) {
  if (sol.status != DareStatus::kStabilizing) {
    throw std::runtime_error(std::string(what) +
                             ": Riccati equation has no stabilizing solution (" +
                             to_string(sol.status) + ")");
  }
}

}  // namespace

CMat SpectralFactor::evaluate(Complex z) const {
  const Eigen::Index k = Sigma_f.rows();
  const CMat root = sqrt_psd(Sigma_f).cast<Complex>();
  const CMat inner = identity(k) + evaluate_transfer(A_f, B_f, K_f, Mat(), z);
  return kind == FactorKind::kCanonical ? CMat(inner * root)
                                        : CMat(root * inner);
}

CMat SpectralFactor::evaluate_inverse(Complex z) const {
  const Eigen::Index k = Sigma_f.rows();
  const CMat inv_root = inv_sqrt_pd(Sigma_f).cast<Complex>();
  const CMat inner =
      identity(k) - evaluate_transfer(A_f - B_f * K_f, B_f, K_f, Mat(), z);
  return kind == FactorKind::kCanonical ? CMat(inv_root * inner)
                                        : CMat(inner * inv_root);
}

SpectralFactor canonical_factor(const StateSpacePlant& plant) {
  const int q = plant.q();
  DareProblem problem{plant.A, plant.L, plant.Bu * plant.Bu.transpose(), Mat(),
                      Mat::Identity(q, q), DareDirection::kEstimation};
  SpectralFactor factor;
  factor.riccati = solve_dare_indefinite(problem);
  require_stabilizing(factor.riccati, "canonical_factor");
  const Mat& P = factor.riccati.P;
  factor.kind = FactorKind::kCanonical;
  factor.A_f = plant.A;
  factor.Sigma_f = symmetrize(Mat::Identity(q, q) + plant.L * P * plant.L.transpose());
  factor.B_f = factor.riccati.K;  // A P Lᵀ Σ⁻¹
  factor.K_f = plant.L;
  return factor;
}

SpectralFactor energy_factor(const StateSpacePlant& plant, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("energy_factor: gamma <= 0");
  const SpectralFactor delta = canonical_factor(plant);
  const Mat A_tilde = plant.A - delta.B_f * plant.L;
  const Mat sigma_inv = delta.Sigma_f.inverse();
  const int p = plant.p();

  DareProblem problem{A_tilde, plant.Bw,
                      plant.L.transpose() * sigma_inv * plant.L, Mat(),
                      gamma * gamma * Mat::Identity(p, p),
                      DareDirection::kControl};
  SpectralFactor factor;
  factor.riccati = solve_dare_indefinite(problem);
  require_stabilizing(factor.riccati, "energy_factor");
  factor.kind = FactorKind::kEnergy;
  factor.gamma = gamma;
  factor.A_f = A_tilde;
  factor.B_f = plant.Bw;
  factor.K_f = factor.riccati.K;
  factor.Sigma_f = factor.riccati.R_cl;  // γ² I + B_wᵀ P₂ B_w
  return factor;
}

SpectralFactor pathlength_factor(const StateSpacePlant& plant, double gamma) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("pathlength_factor: gamma <= 0");
  }
  const SpectralFactor delta = canonical_factor(plant);
  const int n = plant.n();
  const int p = plant.p();
  const Mat I_p = Mat::Identity(p, p);

  const Mat A_aug =
      block_diag(plant.A - delta.B_f * plant.L, Mat::Zero(p, p));
  Mat B_aug(n + p, p);
  B_aug << plant.Bw, -I_p;
  const Mat L_aug = block_diag(inv_sqrt_pd(delta.Sigma_f) * plant.L, gamma * I_p);
  Mat S_aug(n + p, p);
  S_aug << Mat::Zero(n, p), gamma * gamma * I_p;

  DareProblem problem{A_aug, B_aug, L_aug.transpose() * L_aug, S_aug,
                      gamma * gamma * I_p, DareDirection::kControl};
  SpectralFactor factor;
  factor.riccati = solve_dare_indefinite(problem);
  // With B_w = 0 the spectrum γ²|1 − z⁻¹|² vanishes at z = 1 and the inverse
  // realization sits on the stability boundary; accept that limit.
  const DareSolution& sol = factor.riccati;
  if (sol.status != DareStatus::kMarginal) {
    require_stabilizing(sol, "pathlength_factor");
  }
  factor.kind = FactorKind::kPathlength;
  factor.gamma = gamma;
  factor.A_f = A_aug;
  factor.B_f = B_aug;
  factor.K_f = sol.K;
  factor.Sigma_f = sol.R_cl;
  return factor;
}

CMat factor_target_spectrum(const StateSpacePlant& plant, FactorKind kind,
                            double gamma, Complex z) {
  const CMat F = evaluate_transfer(plant.A, plant.Bu, plant.L, Mat(), z);
  const CMat I_q = identity(plant.q());
  const CMat IFF = I_q + F * F.adjoint();
  if (kind == FactorKind::kCanonical) return IFF;

  const CMat G = evaluate_transfer(plant.A, plant.Bw, plant.L, Mat(), z);
  const CMat middle = G.adjoint() * IFF.partialPivLu().solve(G);
  double weight = gamma * gamma;
  if (kind == FactorKind::kPathlength) weight *= std::norm(1.0 - 1.0 / z);
  return weight * identity(plant.p()) + middle;
}

double verify_factor(const SpectralFactor& factor,
                     const StateSpacePlant& plant, double gamma, int n_freq) {
  if (n_freq < 2) throw std::invalid_argument("verify_factor: n_freq < 2");
  double worst = 0.0;
  for (const Complex z : unit_circle_grid(n_freq)) {
    const CMat lhs = factor_target_spectrum(plant, factor.kind, gamma, z);
    const CMat D = factor.evaluate(z);
    const CMat rhs = factor.kind == FactorKind::kCanonical
                         ? CMat(D * D.adjoint())
                         : CMat(D.adjoint() * D);
    const double scale = spectral_norm(lhs);
    const double err = spectral_norm(CMat(lhs - rhs));
    worst = std::max(worst, scale > 0.0 ? err / scale : err);
  }
  return worst;
}

}  // namespace mfregret
