#include "mfregret/riccati.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mfregret {

namespace {

// Problem data rewritten in control form.
struct ControlForm {
  Mat A;
  Mat B;
  Mat Qc;
  Mat S;
  Mat R;
};

ControlForm to_control_form(const DareProblem& problem) {
  const Eigen::Index k = problem.A.rows();
  ControlForm form;
  if (problem.direction == DareDirection::kControl) {
    form.A = problem.A;
    form.B = problem.B;
  } else {
    form.A = problem.A.transpose();
    form.B = problem.B.transpose();
  }
  const Eigen::Index l = form.B.cols();
  if (problem.A.cols() != k || form.B.rows() != k ||
      problem.Qc.rows() != k || problem.Qc.cols() != k ||
      problem.Rsig.rows() != l || problem.Rsig.cols() != l) {
    throw std::invalid_argument("DareProblem: inconsistent dimensions");
  }
  form.Qc = symmetrize(problem.Qc);
  form.R = symmetrize(problem.Rsig);
  if (problem.S.size() == 0) {
    form.S = Mat::Zero(k, l);
  } else {
    if (problem.S.rows() != k || problem.S.cols() != l) {
      throw std::invalid_argument("DareProblem: cross term must be k×l");
    }
    form.S = problem.S;
  }
  return form;
}

struct StepResult {
  Mat next;
  Mat R_cl;
  Mat K;
};

StepResult step(const ControlForm& f, const Mat& P) {
  StepResult out;
  out.R_cl = symmetrize(f.R + f.B.transpose() * P * f.B);
  const Mat M = f.B.transpose() * P * f.A + f.S.transpose();
  out.K = out.R_cl.partialPivLu().solve(M);
  out.next = symmetrize(f.A.transpose() * P * f.A + f.Qc - M.transpose() * out.K);
  return out;
}

double defect_norm(const ControlForm& f, const Mat& P) {
  const StepResult s = step(f, P);
  return (s.next - P).norm();
}

// Structure-preserving doubling for X = ĀᵀX(I + GX)⁻¹Ā + H with the cross
// term folded into Ā and H. The j-th iterate equals P_{2^j} of the plain
// recursion started at zero. When the pencil has eigenvalues on the unit
// circle the iterates stall at a few significant digits, so the iterate with
// the smallest Riccati defect is kept.
bool doubling(const ControlForm& f, const DareOptions& options, Mat& P,
              int& doublings) {
  const Eigen::Index k = f.A.rows();
  Eigen::PartialPivLU<Mat> R_lu(f.R);
  if (f.R.size() > 0 && std::abs(R_lu.determinant()) == 0.0) return false;
  const Mat RinvSt = f.R.size() > 0 ? Mat(R_lu.solve(f.S.transpose()))
                                    : Mat(Mat::Zero(0, k));
  const Mat RinvBt = f.R.size() > 0 ? Mat(R_lu.solve(f.B.transpose()))
                                    : Mat(Mat::Zero(0, k));
  Mat Ak = f.A - f.B * RinvSt;
  Mat Gk = symmetrize(f.B * RinvBt);
  Mat Hk = symmetrize(f.Qc - f.S * RinvSt);
  const Mat I = Mat::Identity(k, k);

  const double data_scale = f.Qc.norm();
  double best_defect = std::numeric_limits<double>::infinity();
  int since_best = 0;
  bool converged = false;
  for (doublings = 0; doublings < options.max_doublings; ++doublings) {
    Eigen::PartialPivLU<Mat> W(I + Gk * Hk);
    const Mat WinvA = W.solve(Ak);
    const Mat WinvG = W.solve(Gk);
    const Mat H_next = symmetrize(Hk + Ak.transpose() * Hk * WinvA);
    const Mat G_next = symmetrize(Gk + Ak * WinvG * Ak.transpose());
    const Mat A_next = Ak * WinvA;
    if (!H_next.allFinite() || !G_next.allFinite() || !A_next.allFinite()) {
      break;
    }
    const double change = (H_next - Hk).norm();
    Hk = H_next;
    Gk = G_next;
    Ak = A_next;
    const double defect = defect_norm(f, Hk) / (1.0 + Hk.norm());
    if (defect < best_defect) {
      best_defect = defect;
      P = Hk;
      since_best = 0;
    } else if (++since_best >= options.stall_doublings) {
      break;
    }
    if (change <= options.tolerance * (Hk.norm() + data_scale)) {
      converged = true;
      break;
    }
  }
  return converged || best_defect <= options.residual_tolerance;
}

DareSolution finish(const DareProblem& problem, const ControlForm& f,
                    const Mat& P, const DareOptions& options) {
  DareSolution sol;
  sol.P = symmetrize(P);
  const StepResult s = step(f, sol.P);
  sol.R_cl = s.R_cl;
  sol.residual = (s.next - sol.P).norm() / (1.0 + sol.P.norm());
  sol.inertia = compute_inertia(sol.R_cl, options.inertia_threshold);
  const Mat closed_loop = f.A - f.B * s.K;
  sol.closed_loop_spectral_radius = spectral_radius(closed_loop);
  if (problem.direction == DareDirection::kControl) {
    sol.K = s.K;
  } else {
    sol.K = s.K.transpose();
  }
  if (!sol.P.allFinite() || !sol.K.allFinite()) {
    sol.status = DareStatus::kNoConvergence;
  } else if (sol.inertia.zero > 0) {
    sol.status = DareStatus::kSingularPivot;
  } else if (sol.residual <= options.residual_tolerance &&
             std::abs(sol.closed_loop_spectral_radius - 1.0) <=
                 options.marginal_band) {
    sol.status = min_eigenvalue(sol.P) >= -1e-8 ? DareStatus::kMarginal
                                                : DareStatus::kNotPositive;
  } else if (sol.residual <= options.residual_tolerance &&
             sol.closed_loop_spectral_radius < 1.0) {
    sol.status = min_eigenvalue(sol.P) >= -1e-8 ? DareStatus::kStabilizing
                                                : DareStatus::kNotPositive;
  } else {
    sol.status = DareStatus::kNoConvergence;
  }
  return sol;
}

}  // namespace

const char* to_string(DareStatus status) {
  switch (status) {
    case DareStatus::kStabilizing: return "Stabilizing";
    case DareStatus::kNoConvergence: return "NoConvergence";
    case DareStatus::kSingularPivot: return "SingularPivot";
    case DareStatus::kNotPositive: return "NotPositive";
    case DareStatus::kMarginal: return "Marginal";
  }
  return "Unknown";
}

Mat riccati_step(const DareProblem& problem, const Mat& P) {
  return step(to_control_form(problem), P).next;
}

double dare_residual(const DareProblem& problem, const Mat& P) {
  const ControlForm f = to_control_form(problem);
  return defect_norm(f, P) / (1.0 + P.norm());
}

DareSolution solve_dare_indefinite(const DareProblem& problem,
                                   const DareOptions& options) {
  const ControlForm f = to_control_form(problem);
  const Eigen::Index k = f.A.rows();
  const Inertia signature = compute_inertia(f.R, options.inertia_threshold);
  const double divergence_bound = 1e14 * (1.0 + f.Qc.norm());
  const double data_scale = f.Qc.norm();

  Mat P = Mat::Zero(k, k);
  int iter = 0;
  bool converged = false;
  for (; iter < options.max_iterations; ++iter) {
    const StepResult s = step(f, P);
    if (compute_inertia(s.R_cl, options.inertia_threshold) != signature) {
      DareSolution sol = finish(problem, f, P, options);
      sol.status = DareStatus::kSingularPivot;
      sol.iterations = iter;
      return sol;
    }
    if (!s.next.allFinite() || s.next.norm() > divergence_bound) {
      DareSolution sol = finish(problem, f, P, options);
      sol.status = DareStatus::kNoConvergence;
      sol.iterations = iter;
      return sol;
    }
    // Relative to the data rather than 1 + ‖P‖, so that badly scaled
    // problems (a tiny Qc, as after γ-scaling at large levels) do not stop
    // at the first iterate.
    const double change = (s.next - P).norm();
    const double scale = P.norm() + data_scale;
    P = s.next;
    if (change <= options.tolerance * scale) {
      converged = true;
      ++iter;
      break;
    }
  }

  if (converged) {
    DareSolution sol = finish(problem, f, P, options);
    sol.iterations = iter;
    return sol;
  }

  Mat P_doubling;
  int doublings = 0;
  const bool ok = doubling(f, options, P_doubling, doublings);
  DareSolution sol = finish(problem, f, ok ? P_doubling : P, options);
  sol.iterations = iter;
  sol.doublings = doublings;
  sol.used_doubling = true;
  if (!ok && (sol.status == DareStatus::kStabilizing ||
              sol.status == DareStatus::kMarginal)) {
    sol.status = DareStatus::kNoConvergence;
  }
  return sol;
}

DareSolution solve_dare_standard(const Mat& A, const Mat& B, const Mat& Qc,
                                 const Mat& R, const DareOptions& options) {
  if (R.rows() != R.cols() || R.rows() != B.cols()) {
    throw std::invalid_argument("solve_dare_standard: R must be l×l");
  }
  if (R.size() > 0 && min_eigenvalue(R) <= 0.0) {
    throw std::invalid_argument(
        "solve_dare_standard: R must be positive definite");
  }
  DareProblem problem{A, B, Qc, Mat(), R, DareDirection::kControl};
  return solve_dare_indefinite(problem, options);
}

}  // namespace mfregret
