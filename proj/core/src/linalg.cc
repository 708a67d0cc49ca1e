#include "mfregret/linalg.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mfregret {

Mat symmetrize(const Mat& S) { return 0.5 * (S + S.transpose()); }

Inertia compute_inertia(const Mat& S, double rel_threshold) {
  Inertia result;
  if (S.size() == 0) return result;
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrize(S),
                                         Eigen::EigenvaluesOnly);
  const Vec& lambda = eig.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  const double threshold = rel_threshold * scale;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) <= threshold || scale == 0.0) {
      ++result.zero;
    } else if (lambda(i) > 0) {
      ++result.positive;
    } else {
      ++result.negative;
    }
  }
  return result;
}

double min_eigenvalue(const Mat& S) {
  if (S.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrize(S),
                                         Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double max_eigenvalue(const Mat& S) {
  if (S.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrize(S),
                                         Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

double spectral_radius(const Mat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::EigenSolver<Mat> eig(M, /*computeEigenvectors=*/false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_norm(const Mat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(M);
  return svd.singularValues()(0);
}

double spectral_norm(const CMat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(M);
  return svd.singularValues()(0);
}

Mat sqrt_psd(const Mat& S) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrize(S));
  const Vec root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() *
         eig.eigenvectors().transpose();
}

Mat inv_sqrt_pd(const Mat& S) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrize(S));
  const Vec& lambda = eig.eigenvalues();
  if (lambda.size() > 0 && !(lambda.minCoeff() > 0.0)) {
    throw std::domain_error("inv_sqrt_pd: matrix is not positive definite");
  }
  const Vec inv_root = lambda.cwiseSqrt().cwiseInverse();
  return eig.eigenvectors() * inv_root.asDiagonal() *
         eig.eigenvectors().transpose();
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMat evaluate_transfer(const Mat& A, const Mat& B, const Mat& C, const Mat& D,
                      Complex z) {
  const Eigen::Index k = A.rows();
  CMat result;
  if (k == 0) {
    result = CMat::Zero(C.rows(), B.cols());
  } else {
    CMat resolvent = z * CMat::Identity(k, k) - A.cast<Complex>();
    result = C.cast<Complex>() *
             resolvent.partialPivLu().solve(B.cast<Complex>());
  }
  if (D.size() > 0) result += D.cast<Complex>();
  return result;
}

std::vector<Complex> unit_circle_grid(int n) {
  std::vector<Complex> points;
  points.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int k = 0; k < n; ++k) {
    const double omega = 2.0 * std::numbers::pi * (k + 0.5) / n;
    points.emplace_back(std::cos(omega), std::sin(omega));
  }
  return points;
}

bool all_finite(const Mat& M) { return M.allFinite(); }

}  // namespace mfregret
