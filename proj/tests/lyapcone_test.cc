#include <cmath>

#include <gtest/gtest.h>

#include "gpreal/fixtures.h"
#include "gpreal/lyapcone.h"
#include "oracles.h"

namespace gpreal {
namespace {

using testing::OracleMinEig;
using testing::RandomComplex;

double ConeResidualMin(const ComplexMatrix& l, const ComplexMatrix& h) {
  return OracleMinEig(h * l + l.adjoint() * h);
}

double MinRealPart(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
  return es.eigenvalues().real().minCoeff();
}

TEST(Member, Examples) {
  const ComplexMatrix h = RealMatrix({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const ConeMembership alpha = Member(fixtures::LAlpha().L, h);
  EXPECT_TRUE(alpha.IsMember());
  EXPECT_NEAR(alpha.min_eigenvalue, ConeResidualMin(fixtures::LAlpha().L, h), 1e-12);
  EXPECT_EQ(Member(ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3)).status,
            ConeStatus::strict);
  EXPECT_EQ(Member(RealMatrix({{0, 1}, {-1, 0}}), ComplexMatrix::Identity(2, 2)).status,
            ConeStatus::closed);
  EXPECT_EQ(Member(-ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)).status,
            ConeStatus::outside);
  EXPECT_FALSE(Member(fixtures::LEpsilon().L, h).IsMember());
  EXPECT_FALSE(Member(fixtures::LZeta().L, h).IsMember());
}

TEST(Member, RejectsSingularOrNonHermitian) {
  EXPECT_ANY_THROW(Member(ComplexMatrix::Identity(2, 2), RealMatrix({{1, 0}, {0, 0}})));
  EXPECT_THROW(Member(ComplexMatrix::Identity(2, 2), RealMatrix({{1, 1}, {0, 1}})),
               std::invalid_argument);
}

TEST(Member, AgreesWithOracleOnRandomInput) {
  std::mt19937_64 rng(31);
  int members = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 2 + trial % 4;
    const ComplexMatrix h = testing::RandomHermitian(r, rng);
    const ComplexMatrix l = trial % 2 ? SampleCone(h, 1000 + trial) : RandomComplex(r, r, rng);
    const double oracle = ConeResidualMin(l, h);
    const ConeMembership m = Member(l, h);
    if (std::abs(oracle) <= 1e-6) continue;
    EXPECT_EQ(m.IsMember(), oracle > 0) << "trial " << trial;
    members += m.IsMember();
  }
  EXPECT_GT(members, 0);
}

TEST(DecomposeLI, SplitsHermitianAndSkew) {
  std::mt19937_64 rng(32);
  const ComplexMatrix w = SampleIdentityCone(4, 5);
  const PTDecomposition pt = DecomposeLI(w);
  EXPECT_TRUE(ApproxEqual(pt.P + pt.T, w, 1e-14));
  EXPECT_TRUE(ApproxEqual(pt.P, pt.P.adjoint(), 1e-14));
  EXPECT_TRUE(ApproxEqual(pt.T, -pt.T.adjoint(), 1e-14));
  EXPECT_GE(OracleMinEig(pt.P), -1e-12);
  EXPECT_THROW(DecomposeLI(-ComplexMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST(ProjectionFromAngles, RankOneProjection) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> angle(0.0, 6.0);
  for (int r = 1; r <= 5; ++r) {
    EXPECT_EQ(ProjectionAngleCount(r), 2 * r - 1);
    std::vector<double> angles(ProjectionAngleCount(r));
    for (double& a : angles) a = angle(rng);
    const ComplexMatrix p = ProjectionFromAngles(r, angles);
    EXPECT_TRUE(ApproxEqual(p * p, p, 1e-13));
    EXPECT_TRUE(ApproxEqual(p, p.adjoint(), 1e-14));
    EXPECT_NEAR(p.trace().real(), 1.0, 1e-13);
    EXPECT_EQ(NumericalRank(p), 1);
  }
}

TEST(ProjectionFromAngles, OverParameterizedCount) {
  const std::vector<double> base = {0.3, 1.1, -0.7, 0.2, 0.9, 2.0, 1.4};
  std::vector<double> longer = base;
  longer.resize(12, 5.0);
  EXPECT_TRUE(ApproxEqual(ProjectionFromAngles(4, longer), ProjectionFromAngles(4, base), 0.0));
  // r = 2: r(r-1) = 2 angles, the last phase defaults to zero
  EXPECT_TRUE(ApproxEqual(ProjectionFromAngles(2, {0.4, 1.2}), ProjectionFromAngles(2, {0.4, 1.2, 0.0}),
                          0.0));
  EXPECT_ANY_THROW(ProjectionFromAngles(3, {0.1}));
}

TEST(SampleCone, MembersOfTheCone) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 2 + trial % 4;
    const ComplexMatrix h = testing::RandomHermitian(r, rng);
    const ComplexMatrix l = SampleCone(h, trial);
    const double scale = std::max(1.0, (h * l).norm());
    EXPECT_GE(ConeResidualMin(l, h), -1e-9 * scale);
    EXPECT_TRUE(Member(l, h, 1e-9 * scale).IsMember());
  }
}

TEST(SampleCone, Deterministic) {
  const ComplexMatrix h = RealMatrix({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(SampleCone(h, 7), SampleCone(h, 7));
  EXPECT_NE(SampleCone(h, 7), SampleCone(h, 8));
}

TEST(InvolutionMap, ImagesStayInCone) {
  std::mt19937_64 rng(35);
  std::bernoulli_distribution flip(0.5);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 2 + trial % 4;
    const int nu = trial % r;
    const ComplexMatrix h = Signature(nu, r);
    ComplexMatrix e = ComplexMatrix::Identity(r, r);
    for (int i = 0; i < r; ++i) e(i, i) = flip(rng) ? -1.0 : 1.0;
    const ComplexMatrix l = SampleCone(h, 500 + trial);
    const InvolutionImages img = InvolutionMap(l, e, h);
    const double scale = std::max(1.0, l.norm());
    EXPECT_GE(ConeResidualMin(img.EL, e * h), -1e-9 * scale);
    EXPECT_GE(ConeResidualMin(img.LE, e * h), -1e-9 * scale);
  }
  EXPECT_THROW(InvolutionMap(ComplexMatrix::Identity(2, 2), 2.0 * ComplexMatrix::Identity(2, 2),
                             ComplexMatrix::Identity(2, 2)),
               std::invalid_argument);
  EXPECT_THROW(InvolutionMap(ComplexMatrix::Identity(2, 2), RealMatrix({{0, 1}, {1, 0}}),
                             RealMatrix({{-1, 0}, {0, 1}})),
               std::invalid_argument);
}

TEST(AdjointRelation, HoldsOnRandomInstances) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 2 + trial % 3;
    const ComplexMatrix h = testing::RandomHermitian(r, rng) + 0.5 * Signature(trial % r, r);
    const ComplexMatrix l = trial % 2 ? SampleCone(h, trial) : RandomComplex(r, r, rng);
    const double direct = ConeResidualMin(l, h);
    const double adjoint = ConeResidualMin(l.adjoint(), h.inverse());
    if (std::abs(direct) > 1e-6 && std::abs(adjoint) > 1e-6) {
      EXPECT_EQ(direct > 0, adjoint > 0);
      EXPECT_TRUE(AdjointRelationHolds(l, h, 1e-7));
    }
  }
}

// L built to have the block pattern directly
ComplexMatrix PatternMatrix(int nu, int eta, int rest, std::mt19937_64& rng) {
  const int r = nu + eta + rest;
  const ComplexMatrix f = RandomComplex(nu + rest, nu + rest, rng);
  const ComplexMatrix g = f * f.adjoint();
  ComplexMatrix l = ComplexMatrix::Zero(r, r);
  l.block(nu, nu, eta, eta) = testing::RandomSkew(eta, rng);
  if (nu > 0) l.topLeftCorner(nu, nu) = -g.topLeftCorner(nu, nu) / 2.0 + testing::RandomSkew(nu, rng);
  if (rest > 0)
    l.bottomRightCorner(rest, rest) = g.bottomRightCorner(rest, rest) / 2.0 + testing::RandomSkew(rest, rng);
  if (nu > 0 && rest > 0) {
    const ComplexMatrix l13 = RandomComplex(nu, rest, rng);
    l.topRightCorner(nu, rest) = l13;
    l.bottomLeftCorner(rest, nu) = (g.topRightCorner(nu, rest) + l13).adjoint();
  }
  return l;
}

TEST(IntersectionPattern, PatternImpliesBothCones) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const int nu = trial % 3, eta = 1 + trial % 2, rest = (trial / 3) % 3;
    const int r = nu + eta + rest;
    const ComplexMatrix l = PatternMatrix(nu, eta, rest, rng);
    EXPECT_TRUE(MatchesIntersectionPattern(l, nu, eta, 1e-9));
    const double scale = std::max(1.0, l.norm());
    EXPECT_GE(ConeResidualMin(l, Signature(nu, r)), -1e-9 * scale);
    EXPECT_GE(ConeResidualMin(l, Signature(nu + eta, r)), -1e-9 * scale);
  }
}

TEST(IntersectionPattern, BrokenPatternLeavesACone) {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 100; ++trial) {
    const int nu = 1, eta = 1, rest = 1, r = 3;
    ComplexMatrix l = PatternMatrix(nu, eta, rest, rng);
    l(1, trial % 2 ? 0 : 2) += Complex(0.5, 0.25);
    EXPECT_FALSE(MatchesIntersectionPattern(l, nu, eta, 1e-9));
    const bool both = ConeResidualMin(l, Signature(nu, r)) >= -1e-9 &&
                      ConeResidualMin(l, Signature(nu + eta, r)) >= -1e-9;
    EXPECT_FALSE(both);
  }
}

TEST(IntersectionPattern, RandomConeMembersAgree) {
  std::mt19937_64 rng(39);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 3;
    const ComplexMatrix l = SampleCone(Signature(1, r), trial);
    const bool both = ConeResidualMin(l, Signature(1, r)) >= -1e-9 &&
                      ConeResidualMin(l, Signature(2, r)) >= -1e-9;
    if (!both) EXPECT_FALSE(MatchesIntersectionPattern(l, 1, 1, 1e-9));
  }
  EXPECT_THROW(MatchesIntersectionPattern(ComplexMatrix::Identity(3, 3), 2, 2), std::invalid_argument);
  EXPECT_THROW(MatchesIntersectionPattern(ComplexMatrix::Identity(3, 3), 0, 0), std::invalid_argument);
}

TEST(IntersectionPattern, WorkedExample) {
  const ComplexMatrix l = fixtures::IntersectionExample(1.0, 1.0).L;
  EXPECT_TRUE(MatchesIntersectionPattern(l, 0, 1));
  EXPECT_GE(ConeResidualMin(l, Signature(0, 3)), -1e-12);
  EXPECT_GE(ConeResidualMin(l, Signature(1, 3)), -1e-12);
}

TEST(MaximalityWitness, BreaksStability) {
  std::mt19937_64 rng(40);
  int tried = 0;
  for (int trial = 0; trial < 200 && tried < 100; ++trial) {
    const int r = 2 + trial % 4;
    const ComplexMatrix l = RandomComplex(r, r, rng);
    if (OracleMinEig(l + l.adjoint()) > -1e-6) continue;
    ++tried;
    const ComplexMatrix a = MaximalityWitness(l);
    EXPECT_GT(OracleMinEig(a + a.adjoint()), 0.0);
    EXPECT_LT(MinRealPart(a + l), 0.0);
  }
  EXPECT_GT(tried, 50);
  EXPECT_THROW(MaximalityWitness(ComplexMatrix::Identity(2, 2)), std::invalid_argument);
}

}  // namespace
}  // namespace gpreal
