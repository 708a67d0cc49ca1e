#include "mfregret/regret.h"

#include <algorithm>
#include <stdexcept>

namespace mfregret {

namespace {

// Â = [[A, −B_w K₂], [0, A_f − B_f K₂]],  B̂_w = [B_w; B_f] Σ₂^{−1/2}.
SyntheticPlant assemble(const StateSpacePlant& plant, SpectralFactor factor,
                        RegretMode mode, double gamma) {
  const int n = plant.n();
  const int k = static_cast<int>(factor.A_f.rows());
  const Mat inv_root = inv_sqrt_pd(factor.Sigma_f);

  SyntheticPlant s;
  s.A = Mat::Zero(n + k, n + k);
  s.A.topLeftCorner(n, n) = plant.A;
  s.A.topRightCorner(n, k) = -plant.Bw * factor.K_f;
  s.A.bottomRightCorner(k, k) = factor.A_f - factor.B_f * factor.K_f;
  s.Bw = Mat(n + k, plant.p());
  s.Bw << plant.Bw * inv_root, factor.B_f * inv_root;
  s.Bu = Mat::Zero(n + k, plant.m());
  s.Bu.topRows(n) = plant.Bu;
  s.C = Mat::Zero(plant.r(), n + k);
  s.C.leftCols(n) = gamma * plant.C;
  s.L = Mat::Zero(plant.q(), n + k);
  s.L.leftCols(n) = plant.L;
  s.mode = mode;
  s.gamma = gamma;
  s.factor = std::move(factor);
  return s;
}

FeasibilityOptions feasibility_options(RegretMode mode) {
  FeasibilityOptions options;
  options.accept_marginal_control = mode == RegretMode::kPathlength;
  return options;
}

// [[G + F K₀, 0], [K₀, 0]] with outputs over T_out and w over T_in.
Mat noncausal_response(const StateSpacePlant& plant, int T_in, int T_out) {
  const int m = plant.m();
  const int p = plant.p();
  const int r = plant.r();
  const int q = plant.q();
  const Horizon out_horizon(T_out);
  const Mat F = transfer_operator(plant, out_horizon, TransferKind::kF).matrix;
  const Mat G = transfer_operator(plant, out_horizon, TransferKind::kG)
                    .matrix.leftCols(T_in * p);
  const Mat normal =
      Mat::Identity(T_out * m, T_out * m) + F.transpose() * F;
  const Mat K0 = -normal.llt().solve(F.transpose() * G);
  Mat out = Mat::Zero(T_out * (q + m), T_in * (p + r));
  out.topLeftCorner(T_out * q, T_in * p) = G + F * K0;
  out.block(T_out * q, 0, T_out * m, T_in * p) = K0;
  return out;
}

double max_regret_eigenvalue(const Mat& TK, const Mat& TK0, const Mat& W,
                             double gamma) {
  const Mat X = TK.transpose() * TK - TK0.transpose() * TK0 - gamma * gamma * W;
  return max_eigenvalue(symmetrize(X));
}

}  // namespace

const char* to_string(RegretMode mode) {
  return mode == RegretMode::kEnergy ? "energy" : "pathlength";
}

SyntheticPlant build_energy_synthetic(const StateSpacePlant& plant,
                                      double gamma) {
  return assemble(plant, energy_factor(plant, gamma), RegretMode::kEnergy,
                  gamma);
}

SyntheticPlant build_pathlength_synthetic(const StateSpacePlant& plant,
                                          double gamma) {
  return assemble(plant, pathlength_factor(plant, gamma),
                  RegretMode::kPathlength, gamma);
}

SyntheticPlant build_synthetic(const StateSpacePlant& plant, RegretMode mode,
                               double gamma) {
  return mode == RegretMode::kEnergy ? build_energy_synthetic(plant, gamma)
                                     : build_pathlength_synthetic(plant, gamma);
}

FeasibilityReport regret_feasible(const StateSpacePlant& plant,
                                  RegretMode mode, double gamma) {
  try {
    return hinf_feasible(build_synthetic(plant, mode, gamma).system(),
                         feasibility_options(mode));
  } catch (const std::runtime_error&) {
    return FeasibilityReport{};
  } catch (const std::domain_error&) {
    return FeasibilityReport{};
  }
}

LinearController synthesize_regret_controller(const StateSpacePlant& plant,
                                              RegretMode mode, double gamma) {
  const SyntheticPlant synthetic = build_synthetic(plant, mode, gamma);
  const HinfSystem system = synthetic.system();
  const FeasibilityReport report =
      hinf_feasible(system, feasibility_options(mode));
  if (!report.feasible) {
    throw std::runtime_error(
        "synthesize_regret_controller: regret level is infeasible");
  }
  // The synthetic measurement is γy.
  LinearController K =
      scale_measurement(central_controller(system, report), gamma);
  K.label = std::string("regret-") + to_string(mode);
  return K;
}

RegretCertificate optimal_regret(const StateSpacePlant& plant, RegretMode mode,
                                 double tol) {
  LevelSearchOptions options;
  options.rel_tol = tol;
  const LevelSearch search = search_level(
      [&](double gamma) {
        return regret_feasible(plant, mode, gamma).feasible;
      },
      options);
  RegretCertificate cert;
  cert.gamma = search.gamma;
  cert.mode = mode;
  cert.trace = search.trace;
  cert.feasibility = regret_feasible(plant, mode, cert.gamma);
  if (cert.feasibility.feasible) {
    cert.controller = synthesize_regret_controller(plant, mode, cert.gamma);
  }
  return cert;
}

BlockOperator noncausal_transfer(const StateSpacePlant& plant,
                                 const Horizon& horizon) {
  const int T = horizon.steps();
  return {noncausal_response(plant, T, T), plant.q() + plant.m(),
          plant.p() + plant.r(), Causality::kNoncausal};
}

Mat complexity_weight(const StateSpacePlant& plant, const Horizon& horizon,
                      RegretMode mode) {
  const int T = horizon.steps();
  const int p = plant.p();
  const int r = plant.r();
  if (mode == RegretMode::kEnergy) return Mat::Identity(T * (p + r), T * (p + r));
  const Mat D = difference_operator(horizon, p).matrix;
  return block_diag(D.transpose() * D, Mat::Identity(T * r, T * r));
}

double regret_worst_case_eigenvalue(const StateSpacePlant& plant,
                                    const LinearController& controller,
                                    RegretMode mode, double gamma,
                                    const Horizon& horizon) {
  const Mat TK = closed_loop_operator(plant, controller, horizon).matrix;
  const Mat TK0 = noncausal_transfer(plant, horizon).matrix;
  return max_regret_eigenvalue(TK, TK0,
                               complexity_weight(plant, horizon, mode), gamma);
}

double regret_worst_case_eigenvalue_embedded(const StateSpacePlant& plant,
                                             const LinearController& controller,
                                             RegretMode mode, double gamma,
                                             const Horizon& horizon,
                                             int tail) {
  if (tail < 0) throw std::invalid_argument("embedded check: tail < 0");
  const int T = horizon.steps();
  const int T_out = T + tail;
  const int p = plant.p();
  const int r = plant.r();
  const Mat TK = closed_loop_response(plant, controller, T, T_out);
  const Mat TK0 = noncausal_response(plant, T, T_out);
  Mat W;
  if (mode == RegretMode::kEnergy) {
    W = Mat::Identity(T * (p + r), T * (p + r));
  } else {
    // (T+1)p × Tp difference operator: the last row block is −w_{T−1}.
    const Mat D = difference_operator(Horizon(T + 1), p)
                      .matrix.leftCols(T * p);
    W = block_diag(D.transpose() * D, Mat::Identity(T * r, T * r));
  }
  return max_regret_eigenvalue(TK, TK0, W, gamma);
}

double ReductionErrors::max() const { return std::max({F, G, H, J}); }

ReductionErrors reduction_identity_errors(const SyntheticPlant& synthetic,
                                          const StateSpacePlant& plant,
                                          const std::vector<Complex>& points) {
  const Mat none;
  auto relative = [](const CMat& lhs, const CMat& rhs) {
    return spectral_norm(CMat(lhs - rhs)) / (1.0 + spectral_norm(rhs));
  };
  ReductionErrors e;
  for (const Complex z : points) {
    const CMat inv_factor = synthetic.factor.evaluate_inverse(z);
    const CMat F = evaluate_transfer(plant.A, plant.Bu, plant.L, none, z);
    const CMat G = evaluate_transfer(plant.A, plant.Bw, plant.L, none, z);
    const CMat H = evaluate_transfer(plant.A, plant.Bu, plant.C, none, z);
    const CMat J = evaluate_transfer(plant.A, plant.Bw, plant.C, none, z);
    const CMat F_hat =
        evaluate_transfer(synthetic.A, synthetic.Bu, synthetic.L, none, z);
    const CMat G_hat =
        evaluate_transfer(synthetic.A, synthetic.Bw, synthetic.L, none, z);
    const CMat H_hat =
        evaluate_transfer(synthetic.A, synthetic.Bu, synthetic.C, none, z);
    const CMat J_hat =
        evaluate_transfer(synthetic.A, synthetic.Bw, synthetic.C, none, z);
    const double g = synthetic.gamma;
    e.F = std::max(e.F, relative(F_hat, F));
    e.G = std::max(e.G, relative(G_hat, CMat(G * inv_factor)));
    e.H = std::max(e.H, relative(H_hat, CMat(g * H)));
    e.J = std::max(e.J, relative(J_hat, CMat(g * J * inv_factor)));
  }
  return e;
}

}  // namespace mfregret
