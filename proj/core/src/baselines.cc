#include "mfregret/baselines.h"

#include <cmath>
#include <string>

#include "mfregret/riccati.h"

namespace mfregret {

namespace {

Mat transfer(const StateSpacePlant& plant, int T, TransferKind kind) {
  return transfer_operator(plant, Horizon(T), kind).matrix;
}

double noncausal_cost(const Mat& F, const Mat& G, const Vec& u, const Vec& w) {
  return (F * u + G * w).squaredNorm() + u.squaredNorm();
}

// ‖Gw‖² minus the clairvoyant cost: the zero controller's regret when v = 0.
double zero_controller_regret(const StateSpacePlant& plant, const Mat& w) {
  const int T = static_cast<int>(w.rows());
  const Mat G = transfer(plant, T, TransferKind::kG);
  const double online = (G * stack_signal(w)).squaredNorm();
  return online - noncausal_optimal(plant, w).cost;
}

Mat repeat_rows(const Vec& c, int T) {
  Mat out(T, c.size());
  for (int t = 0; t < T; ++t) out.row(t) = c.transpose();
  return out;
}

// Online cost of `K` with w = 0 and measurement noise v (T×r).
double measurement_only_cost(const StateSpacePlant& plant,
                             const LinearController& K, const Mat& v) {
  const int T = static_cast<int>(v.rows());
  const Mat response = closed_loop_response(plant, K, T, T);
  return (response.rightCols(T * plant.r()) * stack_signal(v)).squaredNorm();
}

// Largest ‖Gw‖²/(clairvoyant cost) over w, with the maximizing w.
double worst_competitive_ratio(const StateSpacePlant& plant, int T, Vec* w) {
  const Mat F = transfer(plant, T, TransferKind::kF);
  const Mat G = transfer(plant, T, TransferKind::kG);
  Eigen::BDCSVD<Mat> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::Index rank = svd.rank();
  if (rank == 0) return 1.0;
  const Mat U = svd.matrixU().leftCols(rank);
  const Mat FFt = Mat::Identity(F.rows(), F.rows()) + F * F.transpose();
  // With w = V S⁻¹ z the ratio is ‖z‖² / zᵀUᵀ(I + FFᵀ)⁻¹Uz.
  const Mat middle = symmetrize(U.transpose() * FFt.llt().solve(U));
  Eigen::SelfAdjointEigenSolver<Mat> eig(middle);
  const Vec z = eig.eigenvectors().col(0);
  if (w != nullptr) {
    const Vec s = svd.singularValues().head(rank);
    *w = svd.matrixV().leftCols(rank) * z.cwiseQuotient(s);
    w->normalize();
  }
  return 1.0 / eig.eigenvalues()(0);
}

}  // namespace

LinearController lqg_controller(const StateSpacePlant& plant) {
  const int m = plant.m();
  const int r = plant.r();
  const DareSolution lqr =
      solve_dare_standard(plant.A, plant.Bu, plant.Q, Mat::Identity(m, m));
  const DareSolution kalman = solve_dare_indefinite(
      {plant.A, plant.C, plant.Bw * plant.Bw.transpose(), Mat(),
       Mat::Identity(r, r), DareDirection::kEstimation});
  if (lqr.status != DareStatus::kStabilizing ||
      kalman.status != DareStatus::kStabilizing) {
    throw std::runtime_error("lqg_controller: Riccati equation failed (" +
                             std::string(to_string(lqr.status)) + ", " +
                             to_string(kalman.status) + ")");
  }
  const Mat& P = kalman.P;
  const Mat M = (Mat::Identity(r, r) + plant.C * P * plant.C.transpose())
                    .ldlt()
                    .solve(plant.C * P)
                    .transpose();
  const Mat update = Mat::Identity(plant.n(), plant.n()) - M * plant.C;

  LinearController K;
  K.C_K = -lqr.K * update;
  K.D_K = -lqr.K * M;
  K.A_K = plant.A * update + plant.Bu * K.C_K;
  K.B_K = plant.A * M + plant.Bu * K.D_K;
  K.label = "lqg";
  return K;
}

LinearController zero_controller(const StateSpacePlant& plant) {
  LinearController K;
  K.A_K = Mat::Zero(0, 0);
  K.B_K = Mat::Zero(0, plant.r());
  K.C_K = Mat::Zero(plant.m(), 0);
  K.D_K = Mat::Zero(plant.m(), plant.r());
  K.label = "zero";
  return K;
}

NoncausalSolution noncausal_optimal(const StateSpacePlant& plant, const Mat& w,
                                    NoncausalMethod method) {
  if (w.cols() != plant.p()) {
    throw std::invalid_argument("noncausal_optimal: w must be T×p");
  }
  const int T = static_cast<int>(w.rows());
  if (method == NoncausalMethod::kOperatorFormula) {
    return NoncausalSolver(plant, Horizon(T)).solve(w);
  }
  const int m = plant.m();
  const Mat F = transfer(plant, T, TransferKind::kF);
  const Mat G = transfer(plant, T, TransferKind::kG);
  const Vec w_stack = stack_signal(w);
  Mat stacked(F.rows() + T * m, T * m);
  stacked << F, Mat::Identity(T * m, T * m);
  Vec rhs = Vec::Zero(stacked.rows());
  rhs.head(F.rows()) = -G * w_stack;
  const Vec u = stacked.colPivHouseholderQr().solve(rhs);

  NoncausalSolution sol;
  sol.method = NoncausalMethod::kLeastSquares;
  sol.u_star = unstack_signal(u, m);
  sol.cost = noncausal_cost(F, G, u, w_stack);
  return sol;
}

NoncausalSolver::NoncausalSolver(const StateSpacePlant& plant,
                                 const Horizon& horizon)
    : steps_(horizon.steps()),
      m_(plant.m()),
      F_(transfer(plant, horizon.steps(), TransferKind::kF)),
      G_(transfer(plant, horizon.steps(), TransferKind::kG)) {
  Mat normal = F_.transpose() * F_;
  normal.diagonal().array() += 1.0;
  normal_ = std::make_shared<const Eigen::LLT<Mat>>(normal);
}

NoncausalSolution NoncausalSolver::solve(const Mat& w) const {
  if (w.rows() != steps_ || w.cols() * steps_ != G_.cols()) {
    throw std::invalid_argument("NoncausalSolver: w must be T×p");
  }
  const Vec w_stack = stack_signal(w);
  const Vec Gw = G_ * w_stack;
  const Vec u = -normal_->solve(F_.transpose() * Gw);
  NoncausalSolution sol;
  sol.method = NoncausalMethod::kOperatorFormula;
  sol.u_star = unstack_signal(u, m_);
  sol.cost = (F_ * u + Gw).squaredNorm() + u.squaredNorm();
  return sol;
}

CompetitiveRatio zero_competitive_ratio(const StateSpacePlant& plant,
                                        const Horizon& horizon) {
  const BlockOperator F = transfer_operator(plant, horizon, TransferKind::kF);
  const double norm = operator_norm(F);
  return {1.0 + norm * norm, spectral_radius(plant.A) < 1.0};
}

Mat causal_left_factor(const Mat& M) {
  // With E the exchange matrix, E M E = L Lᵀ and Δ = E Lᵀ E is lower
  // triangular with ΔᵀΔ = M.
  const Mat reversed = M.reverse();
  Eigen::LLT<Mat> llt(reversed);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("causal_left_factor: matrix is not positive definite");
  }
  return Mat(llt.matrixU()).reverse();
}

double theorem3_bound(const StateSpacePlant& plant, const Horizon& horizon) {
  const int T = horizon.steps();
  const Mat F = transfer(plant, T, TransferKind::kF);
  const Mat G = transfer(plant, T, TransferKind::kG);
  Mat normal = F.transpose() * F;
  normal.diagonal().array() += 1.0;
  const Mat delta2 = causal_left_factor(normal);
  const Mat X = delta2.transpose().triangularView<Eigen::Upper>().solve(
      F.transpose() * G);
  return spectral_norm(X);
}

const char* to_string(NonexistenceClaim claim) {
  switch (claim) {
    case NonexistenceClaim::kCompetitiveRatio: return "CompetitiveRatio";
    case NonexistenceClaim::kPathlengthBoth: return "PathlengthBoth";
    case NonexistenceClaim::kEnergyWPathlengthV: return "EnergyW-PathlengthV";
  }
  return "Unknown";
}

NonexistenceWitness nonexistence_witness(const StateSpacePlant& plant,
                                         const LinearController& controller,
                                         NonexistenceClaim claim,
                                         const Horizon& horizon) {
  const int T = horizon.steps();
  const int p = plant.p();
  const int r = plant.r();
  NonexistenceWitness out;
  out.claim = claim;

  // Probe each measurement coordinate with a unit impulse at t = 0. By time
  // invariance, a controller silent on all of them ignores y entirely.
  const Mat probe = closed_loop_response(plant, controller, 1, T);
  int reacting = -1;
  for (int j = 0; j < r && reacting < 0; ++j) {
    if (probe.col(p + j).tail(T * plant.m()).norm() > 1e-12) reacting = j;
  }

  if (reacting >= 0) {
    // w = 0 makes the clairvoyant cost zero while the controller pays for its
    // reaction to y. For pathlength-measured v the measurement is held
    // constant, so its pathlength is the single boundary term.
    const bool constant_v = claim != NonexistenceClaim::kCompetitiveRatio;
    auto instance = [&](int steps) {
      Mat v = Mat::Zero(steps, r);
      if (constant_v) {
        v.col(reacting).setOnes();
      } else {
        v(0, reacting) = 1.0;
      }
      return v;
    };
    out.w = Mat::Zero(T, p);
    out.v = instance(T);
    out.online_cost = measurement_only_cost(plant, controller, out.v);
    out.offline_cost = 0.0;
    out.regret = out.online_cost;
    out.bound_rhs = constant_v ? pathlength(out.v) : 0.0;
    out.value_T = out.regret;
    out.value_2T = measurement_only_cost(plant, controller, instance(2 * T));
    out.rhs_T = out.bound_rhs;
    out.rhs_2T = constant_v ? pathlength(instance(2 * T)) : 0.0;
    return out;
  }

  out.zero_controller_branch = true;
  out.v = Mat::Zero(T, r);
  const bool stable = spectral_radius(plant.A) < 1.0;

  switch (claim) {
    case NonexistenceClaim::kPathlengthBoth: {
      // Constant w_t ≡ c with c the top right singular vector of FᵀG
      // restricted to constant signals.
      const Mat F = transfer(plant, T, TransferKind::kF);
      const Mat G = transfer(plant, T, TransferKind::kG);
      Mat G_const = Mat::Zero(G.rows(), p);
      for (int t = 0; t < T; ++t) G_const += G.middleCols(t * p, p);
      Eigen::JacobiSVD<Mat> svd(F.transpose() * G_const, Eigen::ComputeFullV);
      if (svd.singularValues()(0) <= 1e-12) {
        throw NotDemonstrable(
            "nonexistence_witness: FᵀG vanishes on constant disturbances");
      }
      const Vec c = svd.matrixV().col(0);
      out.w = repeat_rows(c, T);
      out.value_T = zero_controller_regret(plant, out.w);
      out.value_2T = zero_controller_regret(plant, repeat_rows(c, 2 * T));
      out.rhs_T = pathlength(out.w);
      out.rhs_2T = pathlength(repeat_rows(c, 2 * T));
      break;
    }
    case NonexistenceClaim::kCompetitiveRatio: {
      if (stable) {
        throw NotDemonstrable(
            "nonexistence_witness: the zero controller is competitive when A "
            "is stable");
      }
      Vec w;
      out.value_T = worst_competitive_ratio(plant, T, &w);
      out.value_2T = worst_competitive_ratio(plant, 2 * T, nullptr);
      out.w = unstack_signal(w, p);
      break;
    }
    case NonexistenceClaim::kEnergyWPathlengthV: {
      if (stable) {
        throw NotDemonstrable(
            "nonexistence_witness: the zero controller meets the bound when A "
            "is stable");
      }
      const Mat F = transfer(plant, T, TransferKind::kF);
      const Mat G = transfer(plant, T, TransferKind::kG);
      Mat normal = F.transpose() * F;
      normal.diagonal().array() += 1.0;
      const Mat X = causal_left_factor(normal)
                        .transpose()
                        .triangularView<Eigen::Upper>()
                        .solve(F.transpose() * G);
      Eigen::BDCSVD<Mat> svd(X, Eigen::ComputeThinV);
      out.w = unstack_signal(svd.matrixV().col(0), p);
      const double bound_T = theorem3_bound(plant, horizon);
      const double bound_2T = theorem3_bound(plant, Horizon(2 * T));
      out.value_T = bound_T * bound_T;
      out.value_2T = bound_2T * bound_2T;
      out.rhs_T = 1.0;
      out.rhs_2T = 1.0;
      break;
    }
  }

  const Mat G = transfer(plant, T, TransferKind::kG);
  out.online_cost = (G * stack_signal(out.w)).squaredNorm();
  out.offline_cost = noncausal_optimal(plant, out.w).cost;
  out.regret = out.online_cost - out.offline_cost;
  out.bound_rhs = claim == NonexistenceClaim::kPathlengthBoth
                      ? pathlength(out.w)
                  : claim == NonexistenceClaim::kCompetitiveRatio
                      ? out.offline_cost
                      : energy(out.w);
  return out;
}

}  // namespace mfregret
