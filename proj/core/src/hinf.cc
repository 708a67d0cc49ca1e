#include "mfregret/hinf.h"

#include <stdexcept>

namespace mfregret {

namespace {

Mat signature(int positive, int negative) {
  Mat S = Mat::Identity(positive + negative, positive + negative);
  S.bottomRightCorner(negative, negative) *= -1.0;
  return S;
}

}  // namespace

HinfSystem to_hinf_system(const StateSpacePlant& plant) {
  return {plant.A, plant.Bu, plant.Bw, plant.C, plant.L};
}

FeasibilityReport hinf_feasible(const HinfSystem& sys,
                                const FeasibilityOptions& options) {
  const int n = sys.n();
  const int m = sys.m();
  const int p = sys.p();
  const int r = sys.r();
  const int q = sys.q();

  Mat B(n, m + p);
  B << sys.Bu, sys.Bw;
  Mat outputs(r + q, n);
  outputs << sys.C, sys.L;

  FeasibilityReport report;
  report.control = solve_dare_indefinite(
      {sys.A, B, sys.L.transpose() * sys.L, Mat(), signature(m, p),
       DareDirection::kControl});
  report.estimation = solve_dare_indefinite(
      {sys.A, outputs, sys.Bw * sys.Bw.transpose(), Mat(), signature(r, q),
       DareDirection::kEstimation});

  const DareSolution& c = report.control;
  const DareSolution& e = report.estimation;
  const bool marginal_ok =
      options.accept_marginal_control && c.status == DareStatus::kMarginal;
  report.control_stable = c.closed_loop_spectral_radius < 1.0 || marginal_ok;
  report.control_inertia = c.inertia == Inertia{m, p, 0};
  report.estimation_stable = e.closed_loop_spectral_radius < 1.0;
  report.estimation_inertia = e.inertia == Inertia{r, q, 0};
  report.spectral_radius_PcPe = spectral_radius(c.P * e.P);
  report.coupling = report.spectral_radius_PcPe < 1.0;
  report.feasible = (c.status == DareStatus::kStabilizing || marginal_ok) &&
                    e.status == DareStatus::kStabilizing &&
                    report.control_stable && report.control_inertia &&
                    report.estimation_stable && report.estimation_inertia &&
                    report.coupling;
  return report;
}

HinfSystem scale_system(const HinfSystem& system, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("scale_system: gamma <= 0");
  HinfSystem scaled = system;
  scaled.Bw = system.Bw / gamma;
  scaled.C = gamma * system.C;
  return scaled;
}

LinearController central_controller(const HinfSystem& sys,
                                    const FeasibilityReport& report) {
  if (!report.feasible) {
    throw std::runtime_error("central_controller: level is infeasible");
  }
  const int n = sys.n();
  const int m = sys.m();
  const int p = sys.p();
  const int r = sys.r();
  const Mat I_n = Mat::Identity(n, n);

  // P_e (I − P_c P_e)⁻¹ = (I − P_e P_c)⁻¹ P_e for symmetric P_c, P_e.
  Eigen::PartialPivLU<Mat> coupling(I_n - report.Pe() * report.Pc());
  const Mat P = symmetrize(coupling.solve(report.Pe()));
  const Mat M = (Mat::Identity(r, r) + sys.C * P * sys.C.transpose())
                    .ldlt()
                    .solve(sys.C * P)
                    .transpose();  // P Cᵀ (I + C P Cᵀ)⁻¹
  const Mat Ku = report.Kc().topRows(m);
  const Mat Kw = report.Kc().bottomRows(p);
  const Mat A_worst = sys.A - sys.Bw * Kw;
  const Mat update = I_n - M * sys.C;

  LinearController K;
  K.C_K = -Ku * update;
  K.D_K = -Ku * M;
  K.A_K = A_worst * update + sys.Bu * K.C_K;
  K.B_K = A_worst * M + sys.Bu * K.D_K;
  K.label = "central";
  return K;
}

LinearController scale_measurement(LinearController controller,
                                   double factor) {
  controller.B_K *= factor;
  controller.D_K *= factor;
  return controller;
}

LinearController hinf_central_controller(const HinfSystem& system,
                                         double gamma) {
  const HinfSystem scaled = scale_system(system, gamma);
  const FeasibilityReport report = hinf_feasible(scaled);
  if (!report.feasible) {
    throw std::runtime_error("hinf_central_controller: level is infeasible");
  }
  LinearController K =
      scale_measurement(central_controller(scaled, report), gamma);
  K.label = "hinf";
  return K;
}

LevelSearch search_level(const std::function<bool(double)>& feasible,
                         const LevelSearchOptions& options) {
  LevelSearch result;
  auto test = [&](double gamma) {
    const bool ok = feasible(gamma);
    result.trace.push_back({gamma, ok});
    return ok;
  };

  double lo = 0.0;
  double hi = 0.0;
  double gamma = options.start;
  if (test(gamma)) {
    hi = gamma;
    for (;;) {
      const double next = hi / 2.0;
      if (next < options.floor) {
        result.gamma = hi;
        result.gamma_lower = 0.0;
        return result;
      }
      if (!test(next)) {
        lo = next;
        break;
      }
      hi = next;
    }
  } else {
    lo = gamma;
    for (;;) {
      const double next = lo * 2.0;
      if (next > options.cap) {
        throw std::runtime_error("search_level: no feasible level up to cap");
      }
      if (test(next)) {
        hi = next;
        break;
      }
      lo = next;
    }
  }

  while ((hi - lo) / lo > options.rel_tol) {
    const double mid = 0.5 * (lo + hi);
    if (test(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.gamma = hi;
  result.gamma_lower = lo;
  return result;
}

HinfOptimum hinf_optimal(const HinfSystem& system, double tol) {
  LevelSearchOptions options;
  options.rel_tol = tol;
  HinfOptimum optimum;
  optimum.search = search_level(
      [&](double gamma) {
        return hinf_feasible(scale_system(system, gamma)).feasible;
      },
      options);
  optimum.gamma = optimum.search.gamma;
  optimum.controller = hinf_central_controller(system, optimum.gamma);
  return optimum;
}

Mat interconnection_matrix(const StateSpacePlant& plant,
                           const LinearController& K) {
  const int n = plant.n();
  const int d = K.state_dim();
  Mat Acl(n + d, n + d);
  Acl.topLeftCorner(n, n) = plant.A + plant.Bu * K.D_K * plant.C;
  Acl.topRightCorner(n, d) = plant.Bu * K.C_K;
  Acl.bottomLeftCorner(d, n) = K.B_K * plant.C;
  Acl.bottomRightCorner(d, d) = K.A_K;
  return Acl;
}

Mat closed_loop_response(const StateSpacePlant& plant, const LinearController& K,
                         int input_steps, int output_steps) {
  if (output_steps < input_steps) {
    throw std::invalid_argument("closed_loop_response: output_steps < input_steps");
  }
  const int n = plant.n();
  const int m = plant.m();
  const int p = plant.p();
  const int r = plant.r();
  const int q = plant.q();
  const int d = K.state_dim();
  const int T_in = input_steps;
  const int T_out = output_steps;

  // The interconnection is time invariant, so the response to an impulse at
  // time j is the response to an impulse at time 0 shifted by j.
  Mat out = Mat::Zero(T_out * (q + m), T_in * (p + r));
  for (int coord = 0; coord < p + r; ++coord) {
    Vec x = Vec::Zero(n);
    Vec xi = Vec::Zero(d);
    Mat s_resp(T_out, q);
    Mat u_resp(T_out, m);
    for (int t = 0; t < T_out; ++t) {
      Vec w = Vec::Zero(p);
      Vec v = Vec::Zero(r);
      if (t == 0) {
        if (coord < p) {
          w(coord) = 1.0;
        } else {
          v(coord - p) = 1.0;
        }
      }
      const Vec y = plant.C * x + v;
      const Vec u = K.C_K * xi + K.D_K * y;
      xi = K.A_K * xi + K.B_K * y;
      x = plant.A * x + plant.Bu * u + plant.Bw * w;
      s_resp.row(t) = (plant.L * x).transpose();
      u_resp.row(t) = u.transpose();
    }
    const bool is_w = coord < p;
    const int base = is_w ? 0 : T_in * p;
    const int offset = is_w ? coord : coord - p;
    const int stride = is_w ? p : r;
    for (int j = 0; j < T_in; ++j) {
      const int col = base + j * stride + offset;
      for (int i = j; i < T_out; ++i) {
        out.block(i * q, col, q, 1) = s_resp.row(i - j).transpose();
        out.block(T_out * q + i * m, col, m, 1) =
            u_resp.row(i - j).transpose();
      }
    }
  }
  return out;
}

BlockOperator closed_loop_operator(const StateSpacePlant& plant,
                                   const LinearController& K,
                                   const Horizon& horizon) {
  const int T = horizon.steps();
  return {closed_loop_response(plant, K, T, T), plant.q() + plant.m(),
          plant.p() + plant.r(), Causality::kCausal};
}

}  // namespace mfregret
