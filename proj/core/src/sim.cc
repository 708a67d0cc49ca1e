#include "mfregret/sim.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mfregret {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform on the open interval (0, 1) from the top 53 bits.
double open_uniform(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Stage t pairs the state x_t with the input u_t; x₀ = 0 and there is no
// input at t = T.
void fill_costs(const StateSpacePlant& plant, SimulationTrace& tr) {
  const int T = static_cast<int>(tr.u.rows());
  tr.stage_costs = Vec::Zero(T + 1);
  for (int t = 0; t <= T; ++t) {
    const Vec xt = tr.x.row(t).transpose();
    double cost = xt.dot(plant.Q * xt);
    if (t < T) cost += tr.u.row(t).squaredNorm();
    tr.stage_costs(t) = cost;
  }
  tr.total_cost = tr.stage_costs.sum();
}

}  // namespace

const char* to_string(DisturbanceKind kind) {
  switch (kind) {
    case DisturbanceKind::kGaussianIID: return "gaussian";
    case DisturbanceKind::kImpulse: return "impulse";
    case DisturbanceKind::kRandomWalk: return "random-walk";
    case DisturbanceKind::kConstant: return "constant";
    case DisturbanceKind::kCustom: return "custom";
  }
  return "unknown";
}

double inverse_normal_cdf(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("inverse_normal_cdf: argument must lie in (0, 1)");
  }
  // Acklam's rational approximation followed by one Halley step.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  double x;
  if (u < low) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= 1.0 - low) {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - u;
  const double step = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - step / (1.0 + 0.5 * x * step);
}

double standard_normal(std::uint64_t seed, StreamRole role,
                       std::uint64_t counter) {
  const std::uint64_t key =
      splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(role));
  return inverse_normal_cdf(open_uniform(splitmix64(key + counter)));
}

Mat generate_disturbance(const DisturbanceSpec& spec, int T, int dim,
                         StreamRole role) {
  if (T < 1 || dim < 0) {
    throw std::invalid_argument("generate_disturbance: bad signal shape");
  }
  Mat out = Mat::Zero(T, dim);
  auto normals = [&]() {
    Mat z(T, dim);
    for (int t = 0; t < T; ++t) {
      for (int j = 0; j < dim; ++j) {
        z(t, j) = spec.magnitude *
                  standard_normal(spec.seed, role,
                                  static_cast<std::uint64_t>(t) * dim + j);
      }
    }
    return z;
  };
  switch (spec.kind) {
    case DisturbanceKind::kGaussianIID:
      out = normals();
      break;
    case DisturbanceKind::kImpulse:
      if (spec.impulse_time < 0 || spec.impulse_time >= T) {
        throw std::invalid_argument(
            "generate_disturbance: impulse_time must lie in [0, T)");
      }
      out.row(spec.impulse_time).setConstant(spec.magnitude);
      break;
    case DisturbanceKind::kRandomWalk: {
      const Mat z = normals();
      for (int t = 0; t < T; ++t) {
        out.row(t) = (t == 0 ? Mat::Zero(1, dim) : Mat(out.row(t - 1))) + z.row(t);
      }
      break;
    }
    case DisturbanceKind::kConstant:
      out.setConstant(spec.magnitude);
      break;
    case DisturbanceKind::kCustom:
      if (spec.custom.rows() != T || spec.custom.cols() != dim) {
        throw std::invalid_argument(
            "generate_disturbance: custom signal must be T×dim");
      }
      out = spec.custom;
      break;
  }
  return out;
}

SimulationTrace rollout(const StateSpacePlant& plant, const LinearController& K,
                        const Mat& w, const Mat& v) {
  const int T = static_cast<int>(w.rows());
  const int n = plant.n();
  const int m = plant.m();
  const int r = plant.r();
  const int d = K.state_dim();
  if (w.cols() != plant.p() || v.rows() != T || v.cols() != r) {
    throw std::invalid_argument("rollout: w must be T×p and v must be T×r");
  }
  if (K.B_K.rows() != d || K.B_K.cols() != r || K.C_K.rows() != m ||
      K.C_K.cols() != d || K.D_K.rows() != m || K.D_K.cols() != r ||
      K.A_K.cols() != d) {
    throw std::invalid_argument("rollout: controller dimensions do not match");
  }

  SimulationTrace tr;
  tr.x = Mat::Zero(T + 1, n);
  tr.u = Mat::Zero(T, m);
  tr.y = Mat::Zero(T, r);
  tr.w = w;
  tr.v = v;

  Vec x = Vec::Zero(n);
  Vec xi = Vec::Zero(d);
  for (int t = 0; t < T; ++t) {
    const Vec y = plant.C * x + v.row(t).transpose();
    const Vec u = K.C_K * xi + K.D_K * y;
    xi = K.A_K * xi + K.B_K * y;
    x = plant.A * x + plant.Bu * u + plant.Bw * w.row(t).transpose();
    tr.y.row(t) = y.transpose();
    tr.u.row(t) = u.transpose();
    tr.x.row(t + 1) = x.transpose();
  }
  fill_costs(plant, tr);
  return tr;
}

SimulationTrace rollout_open_loop(const StateSpacePlant& plant, const Mat& u,
                                  const Mat& w, const Mat& v) {
  const int T = static_cast<int>(w.rows());
  if (w.cols() != plant.p() || v.rows() != T || v.cols() != plant.r() ||
      u.rows() != T || u.cols() != plant.m()) {
    throw std::invalid_argument(
        "rollout_open_loop: expected T×m input, T×p w and T×r v");
  }
  SimulationTrace tr;
  tr.x = Mat::Zero(T + 1, plant.n());
  tr.u = u;
  tr.y = Mat::Zero(T, plant.r());
  tr.w = w;
  tr.v = v;
  Vec x = Vec::Zero(plant.n());
  for (int t = 0; t < T; ++t) {
    tr.y.row(t) = (plant.C * x + v.row(t).transpose()).transpose();
    x = plant.A * x + plant.Bu * u.row(t).transpose() +
        plant.Bw * w.row(t).transpose();
    tr.x.row(t + 1) = x.transpose();
  }
  fill_costs(plant, tr);
  return tr;
}

RegretReport assess(const SimulationTrace& trace, const NoncausalSolver& solver,
                    double gamma, RegretMode mode) {
  RegretReport report;
  report.total_cost = trace.total_cost;
  report.noncausal_cost = solver.solve(trace.w).cost;
  report.regret = report.total_cost - report.noncausal_cost;
  const double v_energy = energy(trace.v);
  report.complexity_energy = energy(trace.w) + v_energy;
  report.complexity_pathlength = pathlength(trace.w) + v_energy;
  report.bound_gamma = gamma;
  const double complexity = mode == RegretMode::kEnergy
                                ? report.complexity_energy
                                : report.complexity_pathlength;
  report.bound_satisfied =
      report.regret <= gamma * gamma * complexity * (1.0 + 1e-6);
  return report;
}

RegretReport evaluate(const StateSpacePlant& plant, const LinearController& K,
                      const DisturbanceSpec& spec_w,
                      const DisturbanceSpec& spec_v, int T, double gamma,
                      RegretMode mode) {
  const Mat w = generate_disturbance(spec_w, T, plant.p(), StreamRole::kDriving);
  const Mat v =
      generate_disturbance(spec_v, T, plant.r(), StreamRole::kMeasurement);
  const SimulationTrace trace = rollout(plant, K, w, v);
  return assess(trace, NoncausalSolver(plant, Horizon(T)), gamma, mode);
}

}  // namespace mfregret
