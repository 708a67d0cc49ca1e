#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace mfregret {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Counts of positive, negative and (numerically) zero eigenvalues of a
/// symmetric matrix.
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

// (S + Sᵀ) / 2
Mat symmetrize(const Mat& S);

/// Eigenvalue-based inertia. An eigenvalue λ counts as zero when
/// |λ| <= rel_threshold * ‖S‖₂.
Inertia compute_inertia(const Mat& S, double rel_threshold = 1e-9);

double min_eigenvalue(const Mat& S);
double max_eigenvalue(const Mat& S);

/// max |λᵢ(M)|; zero for an empty matrix.
double spectral_radius(const Mat& M);

/// Largest singular value.
double spectral_norm(const Mat& M);
double spectral_norm(const CMat& M);

/// Symmetric PSD square root. Negative eigenvalues produced by rounding are
/// clamped to zero.
Mat sqrt_psd(const Mat& S);

/// Inverse of the symmetric square root of a positive definite matrix.
/// Throws std::domain_error when S is not positive definite.
Mat inv_sqrt_pd(const Mat& S);

Mat block_diag(const Mat& a, const Mat& b);

/// C (zI − A)⁻¹ B + D. Pass an empty D for a strictly proper system.
CMat evaluate_transfer(const Mat& A, const Mat& B, const Mat& C, const Mat& D,
                      Complex z);

/// n points e^{iω_k}, ω_k = 2π(k + ½)/n. The half-step offset keeps the grid
/// away from z = ±1, where integrators put poles on the circle.
std::vector<Complex> unit_circle_grid(int n);

/// True when every entry is finite.
bool all_finite(const Mat& M);

}  // namespace mfregret
