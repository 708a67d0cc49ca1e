#include <gtest/gtest.h>

#include <algorithm>

#include "support.h"

namespace mfregret {
namespace {

using testing::s1;

std::vector<Complex> random_points(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::vector<Complex> z;
  for (int k = 0; k < count; ++k) z.push_back(std::polar(1.0, angle(rng)));
  return z;
}

class RegretModes : public ::testing::TestWithParam<RegretMode> {
 protected:
  static const RegretCertificate& certificate(RegretMode mode) {
    static const RegretCertificate energy =
        optimal_regret(double_integrator(), RegretMode::kEnergy);
    static const RegretCertificate pathlength =
        optimal_regret(double_integrator(), RegretMode::kPathlength);
    return mode == RegretMode::kEnergy ? energy : pathlength;
  }
};

TEST(SyntheticPlant, Dimensions) {
  const StateSpacePlant di = double_integrator();
  const SyntheticPlant e = build_energy_synthetic(di, 3.0);
  EXPECT_EQ(e.dim(), 4);
  EXPECT_EQ(e.Bw.rows(), 4);
  EXPECT_EQ(e.Bw.cols(), 1);
  EXPECT_EQ(e.C.rows(), 2);
  EXPECT_EQ(e.C.cols(), 4);
  EXPECT_EQ(build_pathlength_synthetic(di, 8.0).dim(), 5);
}

TEST(SyntheticPlant, NoDisturbanceChannel) {
  const StateSpacePlant plant = testing::scalar_plant(0.5, 1.0, 0.0);
  const SyntheticPlant e = build_energy_synthetic(plant, 2.0);
  EXPECT_EQ(e.Bw.norm(), 0.0);
  EXPECT_EQ(e.A(0, 1), 0.0);
  EXPECT_EQ(e.A(1, 0), 0.0);
}

TEST(SyntheticPlant, MeasurementScalesWithLevel) {
  const StateSpacePlant di = double_integrator();
  const SyntheticPlant one = build_pathlength_synthetic(di, 1.0);
  const SyntheticPlant two = build_pathlength_synthetic(di, 2.0);
  EXPECT_TRUE(two.C.isApprox(2.0 * one.C));
  EXPECT_TRUE(two.L.isApprox(one.L));
}

TEST_P(RegretModes, ReductionIdentities) {
  std::mt19937_64 rng(31);
  const StateSpacePlant di = double_integrator();
  const double star = certificate(GetParam()).gamma;
  for (double factor : {0.5, 1.0, 2.0}) {
    const SyntheticPlant syn = build_synthetic(di, GetParam(), factor * star);
    const ReductionErrors e = reduction_identity_errors(syn, di, random_points(rng, 64));
    EXPECT_LE(e.max(), 1e-8) << factor;
  }
}

TEST_P(RegretModes, FeasibilityIsMonotoneWithFiniteBracket) {
  const StateSpacePlant di = double_integrator();
  EXPECT_TRUE(regret_feasible(di, GetParam(), 1e4).feasible);
  EXPECT_FALSE(regret_feasible(di, GetParam(), 1e-3).feasible);
  const double star = certificate(GetParam()).gamma;
  bool seen = false;
  for (double factor = 0.5; factor <= 3.0; factor += 0.1) {
    const bool ok = regret_feasible(di, GetParam(), factor * star).feasible;
    if (seen) {
      EXPECT_TRUE(ok) << factor;
    }
    seen = seen || ok;
  }
}

TEST_P(RegretModes, BisectionTightness) {
  const StateSpacePlant di = double_integrator();
  const RegretCertificate& cert = certificate(GetParam());
  ASSERT_TRUE(cert.controller.has_value());
  EXPECT_TRUE(regret_feasible(di, GetParam(), cert.gamma).feasible);
  EXPECT_FALSE(regret_feasible(di, GetParam(), cert.gamma * (1.0 - 2e-3)).feasible);
}

TEST_P(RegretModes, BisectionTraceIsMonotone) {
  std::vector<BisectionStep> steps = certificate(GetParam()).trace;
  std::sort(steps.begin(), steps.end(),
            [](const BisectionStep& a, const BisectionStep& b) { return a.gamma < b.gamma; });
  for (std::size_t i = 1; i < steps.size(); ++i) {
    EXPECT_GE(steps[i].feasible, steps[i - 1].feasible);
  }
}

TEST_P(RegretModes, ControllerDimensionAndStability) {
  const StateSpacePlant di = double_integrator();
  const LinearController K =
      synthesize_regret_controller(di, GetParam(), 1.05 * certificate(GetParam()).gamma);
  const int expected = GetParam() == RegretMode::kEnergy ? 2 * di.n() : 2 * di.n() + di.p();
  EXPECT_EQ(K.state_dim(), expected);
  EXPECT_LT(spectral_radius(interconnection_matrix(di, K)), 1.0);
}

TEST_P(RegretModes, EmbeddedWorstCaseCertificate) {
  const StateSpacePlant di = double_integrator();
  const double gamma = 1.05 * certificate(GetParam()).gamma;
  const LinearController K = synthesize_regret_controller(di, GetParam(), gamma);
  for (int T : {100, 200}) {
    EXPECT_LE(regret_worst_case_eigenvalue_embedded(di, K, GetParam(), gamma, Horizon(T), T),
              1e-6)
        << T;
  }
}

TEST_P(RegretModes, MonteCarloBound) {
  const StateSpacePlant di = double_integrator();
  const double gamma = 1.05 * certificate(GetParam()).gamma;
  const LinearController K = synthesize_regret_controller(di, GetParam(), gamma);
  const int T = 200;
  const NoncausalSolver solver(di, Horizon(T));
  std::mt19937_64 rng(GetParam() == RegretMode::kEnergy ? 1 : 2);
  for (int i = 0; i < 100; ++i) {
    const Mat w = testing::gaussian(rng, T, di.p());
    const Mat v = testing::gaussian(rng, T, di.r());
    const RegretReport report = assess(rollout(di, K, w, v), solver, gamma, GetParam());
    EXPECT_TRUE(report.bound_satisfied) << i << " regret " << report.regret;
  }
}

TEST_P(RegretModes, QuietInputsGiveNoRegret) {
  const StateSpacePlant di = double_integrator();
  const double gamma = 1.05 * certificate(GetParam()).gamma;
  const LinearController K = synthesize_regret_controller(di, GetParam(), gamma);
  const int T = 30;
  const SimulationTrace tr = rollout(di, K, Mat::Zero(T, di.p()), Mat::Zero(T, di.r()));
  EXPECT_EQ(tr.u.norm(), 0.0);
  const RegretReport report = assess(tr, NoncausalSolver(di, Horizon(T)), gamma, GetParam());
  EXPECT_EQ(report.regret, 0.0);
  EXPECT_TRUE(report.bound_satisfied);
}

INSTANTIATE_TEST_SUITE_P(BothModes, RegretModes,
                         ::testing::Values(RegretMode::kEnergy, RegretMode::kPathlength),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(EnergyRegret, WorstCaseEigenvalueAtTwoHorizons) {
  const StateSpacePlant di = double_integrator();
  const double gamma = 1.05 * optimal_regret(di, RegretMode::kEnergy).gamma;
  const LinearController K = synthesize_regret_controller(di, RegretMode::kEnergy, gamma);
  for (int T : {200, 400}) {
    EXPECT_LE(regret_worst_case_eigenvalue(di, K, RegretMode::kEnergy, gamma, Horizon(T)), 1e-6);
  }
}

TEST(EnergyRegret, ScalarGameInertia) {
  const double star = optimal_regret(s1(), RegretMode::kEnergy).gamma;
  const FeasibilityReport r = regret_feasible(s1(), RegretMode::kEnergy, 2.0 * star);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.control.status, DareStatus::kStabilizing);
  EXPECT_EQ(r.control.inertia, (Inertia{1, 1, 0}));
}

TEST(PathlengthRegret, FullInformationGameIsTightAtDc) {
  // The pathlength weight vanishes at z = 1, so the control Riccati equation
  // of the synthetic plant only has a semi-stabilizing solution.
  const StateSpacePlant di = double_integrator();
  for (double gamma : {8.0, 20.0}) {
    const FeasibilityReport r = regret_feasible(di, RegretMode::kPathlength, gamma);
    EXPECT_TRUE(r.feasible);
    EXPECT_EQ(r.control.status, DareStatus::kMarginal);
    EXPECT_NEAR(r.control.closed_loop_spectral_radius, 1.0, 1e-5);
  }
}

TEST(NoncausalTransfer, StructureAndCost) {
  std::mt19937_64 rng(8);
  const StateSpacePlant di = double_integrator();
  const int T = 40;
  const BlockOperator T0 = noncausal_transfer(di, Horizon(T));
  const int p = di.p();
  EXPECT_EQ(T0.matrix.rightCols(T * di.r()).norm(), 0.0);
  EXPECT_EQ((T0.matrix * Vec::Zero(T0.matrix.cols())).norm(), 0.0);
  for (int i = 0; i < 10; ++i) {
    const Mat w = testing::gaussian(rng, T, p);
    Vec x = Vec::Zero(T0.matrix.cols());
    x.head(T * p) = stack_signal(w);
    const double cost = (T0.matrix * x).squaredNorm();
    const double oracle = noncausal_optimal(di, w, NoncausalMethod::kLeastSquares).cost;
    EXPECT_NEAR(cost, oracle, 1e-8 * oracle);
  }
}

}  // namespace
}  // namespace mfregret
