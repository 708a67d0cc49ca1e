#include "mfregret/plant.h"

#include <stdexcept>
#include <string>

namespace mfregret {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument("make_plant: " + message);
}

}  // namespace

StateSpacePlant make_plant(const Mat& A, const Mat& Bu, const Mat& Bw,
                           const Mat& C, const Mat& Q) {
  const Eigen::Index n = A.rows();
  require(n > 0, "A must be non-empty");
  require(A.cols() == n, "A must be square");
  require(Bu.rows() == n, "B_u must have " + std::to_string(n) + " rows");
  require(Bw.rows() == n, "B_w must have " + std::to_string(n) + " rows");
  require(C.cols() == n, "C must have " + std::to_string(n) + " columns");
  require(Q.rows() == n && Q.cols() == n, "Q must be n×n");
  require(A.allFinite() && Bu.allFinite() && Bw.allFinite() &&
              C.allFinite() && Q.allFinite(),
          "matrices must be finite");
  require((Q - Q.transpose()).norm() <= 1e-10 * (1.0 + Q.norm()),
          "Q must be symmetric");
  require(min_eigenvalue(Q) >= -1e-10, "Q is not PSD");

  StateSpacePlant plant{A, Bu, Bw, C, symmetrize(Q), Mat()};
  plant.L = sqrt_psd(plant.Q);
  return plant;
}

StateSpacePlant double_integrator(double dt) {
  Mat A(2, 2);
  A << 1.0, dt, 0.0, 1.0;
  Mat B(2, 1);
  B << 0.0, dt;
  return make_plant(A, B, B, Mat::Identity(2, 2), Mat::Identity(2, 2));
}

Horizon::Horizon(int steps) : steps_(steps) {
  if (steps < 1) throw std::invalid_argument("Horizon: T must be >= 1");
}

BlockOperator transfer_operator(const StateSpacePlant& plant,
                                const Horizon& horizon, TransferKind which) {
  const Mat* M = nullptr;
  const Mat* N = nullptr;
  switch (which) {
    case TransferKind::kF: M = &plant.L; N = &plant.Bu; break;
    case TransferKind::kG: M = &plant.L; N = &plant.Bw; break;
    case TransferKind::kH: M = &plant.C; N = &plant.Bu; break;
    case TransferKind::kJ: M = &plant.C; N = &plant.Bw; break;
  }
  const int T = horizon.steps();
  const int a = static_cast<int>(M->rows());
  const int b = static_cast<int>(N->cols());

  // Markov parameters M A^k N, k = 0..T−1.
  std::vector<Mat> markov;
  markov.reserve(T);
  Mat AkN = *N;
  for (int k = 0; k < T; ++k) {
    markov.push_back(*M * AkN);
    AkN = plant.A * AkN;
  }

  BlockOperator op{Mat::Zero(T * a, T * b), a, b, Causality::kStrictlyCausal};
  for (int i = 0; i < T; ++i) {
    for (int j = 0; j <= i; ++j) {
      op.matrix.block(i * a, j * b, a, b) = markov[i - j];
    }
  }
  return op;
}

BlockOperator difference_operator(const Horizon& horizon, int p) {
  const int T = horizon.steps();
  BlockOperator op{Mat::Identity(T * p, T * p), p, p, Causality::kCausal};
  for (int i = 1; i < T; ++i) {
    op.matrix.block(i * p, (i - 1) * p, p, p) = -Mat::Identity(p, p);
  }
  return op;
}

double operator_norm(const BlockOperator& op) {
  return spectral_norm(op.matrix);
}

double energy(const Mat& signal) { return signal.squaredNorm(); }

double pathlength(const Mat& signal) {
  if (signal.rows() == 0) return 0.0;
  double total = signal.row(0).squaredNorm();
  for (Eigen::Index t = 1; t < signal.rows(); ++t) {
    total += (signal.row(t) - signal.row(t - 1)).squaredNorm();
  }
  return total;
}

Vec stack_signal(const Mat& signal) {
  Vec out(signal.size());
  const Eigen::Index dim = signal.cols();
  for (Eigen::Index t = 0; t < signal.rows(); ++t) {
    out.segment(t * dim, dim) = signal.row(t).transpose();
  }
  return out;
}

Mat unstack_signal(const Vec& stacked, int dim) {
  const Eigen::Index T = dim == 0 ? 0 : stacked.size() / dim;
  Mat out(T, dim);
  for (Eigen::Index t = 0; t < T; ++t) {
    out.row(t) = stacked.segment(t * dim, dim).transpose();
  }
  return out;
}

}  // namespace mfregret
