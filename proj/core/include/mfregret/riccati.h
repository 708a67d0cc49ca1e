#pragma once

#include "mfregret/linalg.h"

namespace mfregret {

enum class DareDirection {
  /// P = AᵀPA + Qc − (AᵀPB + S) R_cl⁻¹ (BᵀPA + Sᵀ),  R_cl = Rsig + BᵀPB.
  kControl,
  /// Dual form on transposed data. Here `B` holds the l×k output matrix C
  /// and the equation reads
  /// P = APAᵀ + Qc − (APCᵀ + S) R_cl⁻¹ (CPAᵀ + Sᵀ),  R_cl = Rsig + CPCᵀ.
  kEstimation,
};

/// Discrete algebraic Riccati equation with a possibly indefinite constant
/// block Rsig (e.g. diag(I_m, −I_p) for game-type problems).
struct DareProblem {
  Mat A;
  Mat B;
  Mat Qc;
  Mat S;  // k×l cross term; an empty matrix means zero
  Mat Rsig;
  DareDirection direction = DareDirection::kControl;
};

enum class DareStatus {
  kStabilizing,
  kNoConvergence,
  /// R_cl became numerically singular, or lost the signature of Rsig while
  /// iterating. For H∞-type problems this means the level is at or below the
  /// feasibility boundary.
  kSingularPivot,
  /// Converged to a stabilizing solution that is not positive semidefinite.
  kNotPositive,
  /// Solves the equation, but the closed loop has eigenvalues on the unit
  /// circle (within DareOptions::marginal_band), so only a semi-stabilizing
  /// solution exists.
  kMarginal,
};

const char* to_string(DareStatus status);

struct DareSolution {
  Mat P;
  /// Control form: l×k gain K = R_cl⁻¹(BᵀPA + Sᵀ), closed loop A − BK.
  /// Estimation form: k×l gain K_e = (APCᵀ + S) R_cl⁻¹, closed loop A − K_e C.
  Mat K;
  Mat R_cl;
  double residual = 0.0;
  double closed_loop_spectral_radius = 0.0;
  Inertia inertia;
  DareStatus status = DareStatus::kNoConvergence;
  int iterations = 0;  // plain recursion steps
  int doublings = 0;
  bool used_doubling = false;
};

struct DareOptions {
  /// Plain recursion steps before handing over to doubling.
  int max_iterations = 2000;
  double tolerance = 1e-12;
  /// Doubling steps; step j reaches P_{2^j}, so 64 covers any practical
  /// recursion length.
  int max_doublings = 64;
  /// Doubling stops after this many steps without a smaller defect.
  int stall_doublings = 6;
  /// Bound on the normalized defect ‖P − step(P)‖_F / (1 + ‖P‖_F).
  double residual_tolerance = 1e-8;
  /// |ρ(closed loop) − 1| at or below this counts as marginal.
  double marginal_band = 1e-5;
  /// Zero threshold for the inertia of R_cl, relative to ‖R_cl‖₂.
  double inertia_threshold = 1e-9;
};

/// Stabilizing solution of P = AᵀPA + Qc − AᵀPB(R + BᵀPB)⁻¹BᵀPA for R ≻ 0.
DareSolution solve_dare_standard(const Mat& A, const Mat& B, const Mat& Qc,
                                 const Mat& R,
                                 const DareOptions& options = {});

/// Stabilizing solution of a (possibly indefinite) DARE.
///
/// Runs the Riccati recursion from P₀ = 0. The recursion is abandoned with
/// kSingularPivot as soon as R_cl loses the signature of Rsig, and with
/// kNoConvergence when it diverges. If the iteration budget runs out the
/// solver switches to the doubling recursion, which produces the iterates
/// P_{2^j} of the same sequence and reaches slowly converging (marginal)
/// solutions in a few dozen steps.
DareSolution solve_dare_indefinite(const DareProblem& problem,
                                   const DareOptions& options = {});

/// ‖defect(P)‖_F / (1 + ‖P‖_F) in the problem's own direction.
double dare_residual(const DareProblem& problem, const Mat& P);

/// One step of the Riccati recursion in the problem's own direction.
Mat riccati_step(const DareProblem& problem, const Mat& P);

}  // namespace mfregret
