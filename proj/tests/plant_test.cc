#include <gtest/gtest.h>

#include <cmath>

#include "support.h"

namespace mfregret {
namespace {

using testing::s1;
using testing::scalar_plant;

TEST(MakePlant, DoubleIntegratorHasIdentityWeightRoot) {
  const StateSpacePlant di = double_integrator();
  Mat A(2, 2);
  A << 1.0, 0.1, 0.0, 1.0;
  EXPECT_TRUE(di.A.isApprox(A));
  EXPECT_TRUE(di.L.isApprox(Mat::Identity(2, 2)));
  EXPECT_EQ(di.m(), 1);
  EXPECT_EQ(di.p(), 1);
  EXPECT_EQ(di.r(), 2);
}

TEST(MakePlant, ScalarWeightRoot) {
  EXPECT_DOUBLE_EQ(s1().L(0, 0), 1.0);
  EXPECT_NEAR(scalar_plant(0.5, 1, 1, 1, 4.0).L(0, 0), 2.0, 1e-14);
}

TEST(MakePlant, RejectsIndefiniteWeight) {
  EXPECT_THROW(scalar_plant(0.5, 1, 1, 1, -1.0), std::invalid_argument);
}

TEST(MakePlant, RejectsMismatchedShapes) {
  EXPECT_THROW(make_plant(Mat::Identity(2, 2), Mat::Ones(3, 1), Mat::Ones(2, 1),
                          Mat::Identity(2, 2), Mat::Identity(2, 2)),
               std::invalid_argument);
}

TEST(TransferOperator, ScalarTwoSteps) {
  // x₁ = u₀, x₂ = 0.5u₀ + u₁.
  const Mat F = transfer_operator(s1(), Horizon(2), TransferKind::kF).matrix;
  Mat expected(2, 2);
  expected << 1.0, 0.0, 0.5, 1.0;
  EXPECT_TRUE(F.isApprox(expected));
}

TEST(TransferOperator, SingleStepIsInputGain) {
  const StateSpacePlant di = double_integrator();
  const Mat F = transfer_operator(di, Horizon(1), TransferKind::kF).matrix;
  EXPECT_TRUE(F.isApprox(di.L * di.Bu));
}

TEST(TransferOperator, DoubleIntegratorSecondBlock) {
  const BlockOperator G =
      transfer_operator(double_integrator(), Horizon(3), TransferKind::kG);
  Mat expected(2, 1);
  expected << 0.01, 0.1;
  EXPECT_TRUE(G.block(1, 0).isApprox(expected, 1e-14));
  EXPECT_TRUE(G.block(2, 1).isApprox(expected, 1e-14));
}

TEST(TransferOperator, LowerTriangularAndToeplitz) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const StateSpacePlant plant = testing::random_plant(rng, 3, 2, 2, 2);
    for (TransferKind kind :
         {TransferKind::kF, TransferKind::kG, TransferKind::kH, TransferKind::kJ}) {
      const BlockOperator op = transfer_operator(plant, Horizon(6), kind);
      for (int i = 0; i < 6; ++i) {
        for (int j = i + 1; j < 6; ++j) EXPECT_EQ(op.block(i, j).norm(), 0.0);
        for (int j = 1; j <= i; ++j) {
          EXPECT_EQ((op.block(i, j) - op.block(i - 1, j - 1)).norm(), 0.0);
        }
      }
    }
  }
}

TEST(TransferOperator, MatchesSimulation) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<int> steps(1, 20);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = dim(rng);
    const StateSpacePlant plant =
        testing::random_plant(rng, n, dim(rng), dim(rng), dim(rng), 1.05);
    const int T = steps(rng);
    const Mat u = testing::gaussian(rng, T, plant.m());
    const Mat w = testing::gaussian(rng, T, plant.p());
    Vec x = Vec::Zero(n);
    Vec s(T * plant.q());
    for (int t = 0; t < T; ++t) {
      x = plant.A * x + plant.Bu * u.row(t).transpose() + plant.Bw * w.row(t).transpose();
      s.segment(t * plant.q(), plant.q()) = plant.L * x;
    }
    const Horizon h(T);
    const Vec predicted =
        transfer_operator(plant, h, TransferKind::kF).matrix * stack_signal(u) +
        transfer_operator(plant, h, TransferKind::kG).matrix * stack_signal(w);
    EXPECT_LE((predicted - s).norm(), 1e-10 * (1.0 + s.norm()));
  }
}

TEST(DifferenceOperator, SmallCases) {
  EXPECT_TRUE(difference_operator(Horizon(1), 2).matrix.isApprox(Mat::Identity(2, 2)));
  Mat expected(3, 3);
  expected << 1, 0, 0, -1, 1, 0, 0, -1, 1;
  EXPECT_TRUE(difference_operator(Horizon(3), 1).matrix.isApprox(expected));
}

TEST(DifferenceOperator, InverseIsCumulativeSum) {
  const int T = 7;
  const int p = 2;
  const Mat D = difference_operator(Horizon(T), p).matrix;
  Mat S = Mat::Zero(T * p, T * p);
  for (int i = 0; i < T; ++i) {
    for (int j = 0; j <= i; ++j) S.block(i * p, j * p, p, p).setIdentity();
  }
  EXPECT_TRUE((D * S).isIdentity(1e-15));
  EXPECT_TRUE((S * D).isIdentity(1e-15));
}

TEST(DifferenceOperator, ConstantSignalKeepsBoundaryTermOnly) {
  const Mat w = Mat::Constant(3, 1, 2.5);
  const Vec d = difference_operator(Horizon(3), 1).matrix * stack_signal(w);
  EXPECT_DOUBLE_EQ(d.squaredNorm(), 6.25);
}

TEST(Signals, EnergyAndPathlength) {
  EXPECT_EQ(energy(Mat::Zero(4, 2)), 0.0);
  EXPECT_EQ(pathlength(Mat::Zero(4, 2)), 0.0);
  EXPECT_DOUBLE_EQ(energy(Mat::Ones(3, 1)), 3.0);
  EXPECT_DOUBLE_EQ(pathlength(Mat::Ones(3, 1)), 1.0);
  Mat alt(2, 1);
  alt << 1.0, -1.0;
  EXPECT_DOUBLE_EQ(energy(alt), 2.0);
  EXPECT_DOUBLE_EQ(pathlength(alt), 5.0);
}

TEST(Signals, StackRoundTrip) {
  std::mt19937_64 rng(3);
  const Mat s = testing::gaussian(rng, 5, 3);
  const Vec v = stack_signal(s);
  EXPECT_EQ(v(3), s(1, 0));
  EXPECT_TRUE(unstack_signal(v, 3).isApprox(s));
}

TEST(OperatorNorm, Identity) {
  BlockOperator I{Mat::Identity(6, 6), 2, 2, Causality::kCausal};
  EXPECT_NEAR(operator_norm(I), 1.0, 1e-14);
}

TEST(OperatorNorm, ScalarPlantApproachesFrequencyPeak) {
  // sup over the unit circle of |1/(z − 0.5)| is 2, reached at z = 1.
  const double n200 = operator_norm(transfer_operator(s1(), Horizon(200), TransferKind::kF));
  EXPECT_NEAR(n200, 2.0, 0.02);
}

TEST(OperatorNorm, MonotoneAndConvergentForStablePlant) {
  double previous = 0.0;
  for (int T : {10, 50, 100, 200, 400}) {
    const double n = operator_norm(transfer_operator(s1(), Horizon(T), TransferKind::kF));
    EXPECT_GE(n, previous - 1e-12);
    previous = n;
  }
  const double n800 = operator_norm(transfer_operator(s1(), Horizon(800), TransferKind::kF));
  EXPECT_LT(std::abs(n800 - previous) / previous, 1e-3);
}

TEST(OperatorNorm, UnstablePlantGrows) {
  const StateSpacePlant plant = scalar_plant(1.1);
  const double a = operator_norm(transfer_operator(plant, Horizon(20), TransferKind::kF));
  const double b = operator_norm(transfer_operator(plant, Horizon(40), TransferKind::kF));
  EXPECT_GT(b, 4.0 * a);
}

}  // namespace
}  // namespace mfregret
