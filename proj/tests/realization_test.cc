#include <cmath>

#include <gtest/gtest.h>

#include "gpreal/fixtures.h"
#include "gpreal/realization.h"
#include "oracles.h"

namespace gpreal {
namespace {

using testing::RandomComplex;

Realization RandomRealization(int n, int p, std::mt19937_64& rng) {
  return {RandomComplex(n, n, rng), RandomComplex(n, p, rng), RandomComplex(p, n, rng),
          RandomComplex(p, p, rng)};
}

TEST(Realization, AssemblePartitionRoundTrip) {
  std::mt19937_64 rng(21);
  const Realization re = RandomRealization(3, 2, rng);
  const SystemMatrix sys = Assemble(re);
  EXPECT_EQ(sys.size(), 5);
  EXPECT_EQ(sys.p, 2);
  const Realization back = Partition(sys);
  EXPECT_EQ(back.A, re.A);
  EXPECT_EQ(back.B, re.B);
  EXPECT_EQ(back.C, re.C);
  EXPECT_EQ(back.D, re.D);
}

TEST(Realization, ValidateRejectsBadShapes) {
  Realization re{ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 1), ComplexMatrix::Zero(1, 3),
                 ComplexMatrix::Zero(1, 1)};
  EXPECT_THROW(re.Validate(), std::invalid_argument);
  SystemMatrix sys{ComplexMatrix::Zero(2, 2), 2};
  EXPECT_THROW(sys.Validate(), std::invalid_argument);
}

TEST(Evaluate, MatchesExplicitInverse) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const Realization re = RandomRealization(1 + trial % 4, 1 + trial % 2, rng);
    const Complex s(0.3 * trial - 4.0, 1.7);
    const int n = re.states();
    const ComplexMatrix oracle =
        re.C * (s * ComplexMatrix::Identity(n, n) - re.A).inverse() * re.B + re.D;
    EXPECT_LE((Evaluate(re, s) - oracle).norm(), 1e-9 * (1 + oracle.norm()));
  }
}

TEST(Evaluate, ThrowsAtPole) {
  const Realization re = Partition(fixtures::LDelta());
  EXPECT_THROW(Evaluate(re, Complex(0, 0)), PoleError);
}

TEST(ToScalarRational, AlphaMatchesCofactorOracle) {
  const SystemMatrix sys = fixtures::LAlpha();
  const testing::CofactorRational oracle = testing::CofactorTransferFunction(sys.L.real());
  const ScalarRational f = ToScalarRational(Partition(sys));
  EXPECT_TRUE(f.exact);
  ASSERT_EQ(f.numerator.size(), oracle.numerator.size());
  ASSERT_EQ(f.denominator.size(), oracle.denominator.size());
  for (size_t i = 0; i < oracle.numerator.size(); ++i) EXPECT_EQ(f.numerator[i], oracle.numerator[i]);
  for (size_t i = 0; i < oracle.denominator.size(); ++i)
    EXPECT_EQ(f.denominator[i], oracle.denominator[i]);
}

TEST(ToScalarRational, RandomRealMatchesCofactorOracle) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 4;
    const Eigen::MatrixXd l = RandomComplex(n + 1, n + 1, rng, true).real();
    const testing::CofactorRational oracle = testing::CofactorTransferFunction(l);
    const ScalarRational f = ToScalarRational(Partition(SystemMatrix{l.cast<Complex>(), 1}));
    ASSERT_EQ(f.denominator.size(), oracle.denominator.size());
    for (size_t i = 0; i < oracle.denominator.size(); ++i)
      EXPECT_NEAR(std::abs(f.denominator[i] - oracle.denominator[i]), 0.0, 1e-9);
    const Polynomial num = TrimPolynomial(f.numerator, 1e-12);
    for (size_t i = 0; i < oracle.numerator.size(); ++i) {
      const Complex c = i < num.size() ? num[i] : Complex(0);
      EXPECT_NEAR(std::abs(c - oracle.numerator[i]), 0.0, 1e-9);
    }
  }
}

TEST(ToScalarRational, AgreesWithEvaluate) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const Realization re = RandomRealization(1 + trial % 5, 1, rng);
    const ScalarRational f = ToScalarRational(re);
    const Complex s(1.3, -0.4 + 0.1 * trial);
    const Complex direct = Evaluate(re, s)(0, 0);
    EXPECT_LE(std::abs(f(s) - direct), 1e-8 * (1 + std::abs(direct)));
  }
}

TEST(ToScalarRational, ReducedCancelsCommonRoot) {
  const ScalarRational f = ToScalarRational(Partition(fixtures::LGamma()));
  const ScalarRational g = f.Reduced();
  EXPECT_LT(g.denominator.size(), f.denominator.size());
  for (const double s : {0.5, 2.0, 3.0}) EXPECT_NEAR(std::abs(g(s) - 1.0 / (s + 1.0)), 0.0, 1e-9);
}

TEST(PolynomialRoots, QuadraticAndCubic) {
  auto roots = PolynomialRoots({Complex(-2), Complex(0), Complex(1)});
  ASSERT_EQ(roots.size(), 2u);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  EXPECT_NEAR(roots[0].real(), -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(roots[1].real(), std::sqrt(2.0), 1e-12);
  // (s-1)(s-2)(s-3)
  const auto cubic = PolynomialRoots({Complex(-6), Complex(11), Complex(-6), Complex(1)});
  ASSERT_EQ(cubic.size(), 3u);
  double sum = 0;
  for (const auto r : cubic) sum += r.real();
  EXPECT_NEAR(sum, 6.0, 1e-10);
}

TEST(Minimality, ControllabilityAndObservability) {
  // uncontrollable second state
  const Realization re{RealMatrix({{-1, 0}, {0, -2}}), RealMatrix({{1}, {0}}), RealMatrix({{1, 1}}),
                       RealMatrix({{0}})};
  EXPECT_EQ(McMillanDegree(re), 1);
  EXPECT_FALSE(IsMinimal(re));
  const Realization reduced = MinimalRealization(re);
  EXPECT_EQ(reduced.states(), 1);
  for (const double s : {0.5, 1.5, 4.0}) {
    EXPECT_NEAR(std::abs(Evaluate(reduced, s)(0, 0) - Evaluate(re, s)(0, 0)), 0.0, 1e-12);
  }
  const auto poles = Poles(re);
  ASSERT_EQ(poles.size(), 1u);
  EXPECT_NEAR(poles[0].real(), -1.0, 1e-12);
}

TEST(Minimality, ObsvIsAdjointOfCtrb) {
  std::mt19937_64 rng(25);
  const ComplexMatrix a = RandomComplex(4, 4, rng);
  const ComplexMatrix c = RandomComplex(2, 4, rng);
  EXPECT_TRUE(ApproxEqual(Obsv(a, c), Ctrb(a.adjoint(), c.adjoint()).adjoint(), 1e-10));
}

TEST(Minimality, RandomReductionPreservesTransferFunction) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 30; ++trial) {
    // block-diagonal with a hidden mode
    const int n = 3;
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    a.topLeftCorner(2, 2) = RandomComplex(2, 2, rng);
    a(2, 2) = Complex(-5.0, 0.3);
    ComplexMatrix b = ComplexMatrix::Zero(n, 1);
    b.topRows(2) = RandomComplex(2, 1, rng);
    const Realization re{a, b, RandomComplex(1, n, rng), RandomComplex(1, 1, rng)};
    EXPECT_EQ(McMillanDegree(re), 2);
    const Realization reduced = MinimalRealization(re);
    EXPECT_EQ(reduced.states(), 2);
    EXPECT_TRUE(IsMinimal(reduced));
    const Complex s(0.7, 2.1);
    EXPECT_LE(std::abs(Evaluate(reduced, s)(0, 0) - Evaluate(re, s)(0, 0)), 1e-8);
  }
}

TEST(CoordinateTransform, PreservesTransferFunction) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 30; ++trial) {
    const Realization re = RandomRealization(3, 1, rng);
    const ComplexMatrix v = RandomComplex(3, 3, rng) + 2.0 * ComplexMatrix::Identity(3, 3);
    const Realization moved = CoordinateTransform(re, v);
    const Complex s(0.2, 1.1);
    EXPECT_LE(std::abs(Evaluate(moved, s)(0, 0) - Evaluate(re, s)(0, 0)), 1e-7);
  }
}

TEST(ConvexCombine, Endpoints) {
  const SystemMatrix a = fixtures::LEta();
  const SystemMatrix b = fixtures::LTheta();
  EXPECT_EQ(ConvexCombine(a, b, 0.0).L, a.L);
  EXPECT_EQ(ConvexCombine(a, b, 1.0).L, b.L);
  EXPECT_EQ(ConvexCombine(a, b, 0.5).L, (a.L + b.L) / 2.0);
}

TEST(UnobservableDim, Examples) {
  EXPECT_EQ(UnobservableDim(RealMatrix({{-1, 0}, {0, -2}}), RealMatrix({{1, 0}, {0, 0}})), 1);
  EXPECT_EQ(UnobservableDim(RealMatrix({{0, 1}, {0, 0}}), RealMatrix({{1, 0}, {0, 0}})), 0);
  EXPECT_EQ(UnobservableDim(RealMatrix({{0, 1}, {0, 0}}), RealMatrix({{0, 0}, {0, 1}})), 1);
  EXPECT_EQ(UnobservableDim(RealMatrix({{0, 1}, {0, 0}}), ComplexMatrix::Zero(2, 2)), 2);
}

}  // namespace
}  // namespace gpreal
