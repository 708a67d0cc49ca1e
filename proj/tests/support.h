#pragma once

#include <random>

#include "mfregret/sim.h"

namespace mfregret::testing {

inline StateSpacePlant scalar_plant(double a, double bu = 1.0, double bw = 1.0,
                                    double c = 1.0, double q = 1.0) {
  auto s = [](double x) { return Mat::Constant(1, 1, x); };
  return make_plant(s(a), s(bu), s(bw), s(c), s(q));
}

// A = 0.5, every other coefficient 1.
inline StateSpacePlant s1() { return scalar_plant(0.5); }

inline Mat gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) M(i, j) = n(rng);
  }
  return M;
}

// Random plant with spectral radius of A below `radius`, full-rank
// measurement and Q = I.
inline StateSpacePlant random_plant(std::mt19937_64& rng, int n, int m, int p,
                                    int r, double radius = 0.9) {
  Mat A = gaussian(rng, n, n);
  const double rho = spectral_radius(A);
  if (rho > 0.0) A *= radius / rho;
  return make_plant(A, gaussian(rng, n, m), gaussian(rng, n, p),
                    gaussian(rng, r, n), Mat::Identity(n, n));
}

}  // namespace mfregret::testing
