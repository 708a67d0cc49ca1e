#pragma once

#include "mfregret/linalg.h"

namespace mfregret {

/// Discrete-time LTI plant
///
///   x_{t+1} = A x_t + B_u u_t + B_w w_t,   y_t = C x_t + v_t,
///
/// with stage cost x_tᵀ Q x_t + u_tᵀ u_t (control weight fixed to identity).
/// L is the symmetric PSD square root of Q, so s_t = L x_t is the penalized
/// output.
struct StateSpacePlant {
  Mat A;
  Mat Bu;
  Mat Bw;
  Mat C;
  Mat Q;
  Mat L;

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(Bu.cols()); }
  int p() const { return static_cast<int>(Bw.cols()); }
  int r() const { return static_cast<int>(C.rows()); }
  int q() const { return static_cast<int>(L.rows()); }
};

/// Validates dimensions and Q ⪰ 0 (min eigenvalue ≥ −1e−10), then computes
/// L = Q^{1/2}. Throws std::invalid_argument on failure.
StateSpacePlant make_plant(const Mat& A, const Mat& Bu, const Mat& Bw,
                           const Mat& C, const Mat& Q);

/// Position/velocity double integrator with step dt, B_u = B_w = [0; dt],
/// full-state measurement and Q = I₂.
StateSpacePlant double_integrator(double dt = 0.1);

/// Number of control steps T ≥ 1. Signals are stored as T×dim matrices whose
/// row t holds the sample at time t; x₀ = 0 and the penalized states are
/// x₁..x_T.
class Horizon {
 public:
  explicit Horizon(int steps);
  int steps() const { return steps_; }

 private:
  int steps_;
};

enum class Causality { kStrictlyCausal, kCausal, kNoncausal };

/// Dense finite-horizon operator made of T×T blocks of size
/// row_block × col_block.
struct BlockOperator {
  Mat matrix;
  int row_block = 0;
  int col_block = 0;
  Causality causality = Causality::kNoncausal;

  int blocks() const {
    return row_block == 0 ? 0 : static_cast<int>(matrix.rows()) / row_block;
  }
  Mat block(int i, int j) const {
    return matrix.block(i * row_block, j * col_block, row_block, col_block);
  }
};

/// Which input/output pair of the plant to unroll.
enum class TransferKind {
  kF,  // u → s
  kG,  // w → s
  kH,  // u → y
  kJ,  // w → y
};

/// Strictly causal block-Toeplitz matrix of the chosen map. Block (i, j)
/// (row i ↔ output at time i+1, column j ↔ input at time j) equals
/// M A^{i−j} N for i ≥ j and zero otherwise.
///
/// Note that the row indexing starts at time 1: y₀ = v₀ is handled by the
/// simulator.
BlockOperator transfer_operator(const StateSpacePlant& plant,
                                const Horizon& horizon, TransferKind which);

/// First-difference operator D_p with the w_{−1} = 0 convention:
/// I_p on the block diagonal, −I_p on the first block subdiagonal.
BlockOperator difference_operator(const Horizon& horizon, int p);

/// Largest singular value of the dense matrix.
double operator_norm(const BlockOperator& op);

/// Σ_t ‖w_t‖² over the rows of a T×dim signal.
double energy(const Mat& signal);

/// Σ_t ‖w_t − w_{t−1}‖² with w_{−1} = 0.
double pathlength(const Mat& signal);

/// Stacks the rows of a T×dim signal into a (T·dim) vector, time-major.
Vec stack_signal(const Mat& signal);

/// Inverse of stack_signal.
Mat unstack_signal(const Vec& stacked, int dim);

}  // namespace mfregret
