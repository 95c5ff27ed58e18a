#include <cmath>

#include <gtest/gtest.h>

#include "gpreal/fixtures.h"
#include "gpreal/gpsets.h"
#include "oracles.h"

namespace gpreal {
namespace {

using testing::OracleMinEig;

ComplexMatrix BlockDiag(const ComplexMatrix& hhat, int p) {
  const int n = static_cast<int>(hhat.rows());
  ComplexMatrix h = ComplexMatrix::Identity(n + p, n + p);
  h.topLeftCorner(n, n) = hhat;
  return h;
}

bool HasClass(const ClassificationReport& report, const GpClass& cls) {
  for (const auto& m : report.memberships)
    if (m.cls == cls) return true;
  return false;
}

TEST(GpClass, Validation) {
  EXPECT_NO_THROW((GpClass{3, 1, 1}.Validate()));
  EXPECT_NO_THROW((GpClass{2, 1, 1}.Validate()));
  EXPECT_THROW((GpClass{1, 0, 1}.Validate()), std::invalid_argument);
  EXPECT_THROW((GpClass{3, 3, 1}.Validate()), std::invalid_argument);
  EXPECT_THROW((GpClass{3, 0, 3}.Validate()), std::invalid_argument);
  EXPECT_EQ(ToString(GpClass{3, 1, 1}), "(3,1,1)");
}

TEST(UnionCover, Lists) {
  EXPECT_EQ(UnionCover(3, 1), (std::vector<GpClass>{{3, 0, 1}, {3, 1, 1}, {3, 2, 1}}));
  EXPECT_EQ(UnionCover(2, 1), (std::vector<GpClass>{{2, 0, 1}, {2, 1, 1}}));
  EXPECT_EQ(UnionCover(4, 2), (std::vector<GpClass>{{4, 0, 2}, {4, 1, 2}, {4, 2, 2}}));
  EXPECT_THROW(UnionCover(1, 1), std::invalid_argument);
}

TEST(Classify, Examples) {
  const ClassificationReport both = Classify(fixtures::IntersectionExample(1.0, 1.0));
  EXPECT_TRUE(HasClass(both, {3, 0, 1}));
  EXPECT_TRUE(HasClass(both, {3, 1, 1}));

  const ClassificationReport alpha = Classify(fixtures::LAlpha());
  EXPECT_TRUE(HasClass(alpha, {3, 1, 1}));
  EXPECT_TRUE(alpha.minimal);
  EXPECT_EQ(alpha.mcmillan, 2);

  const ClassificationReport beta = Classify(fixtures::LBeta());
  EXPECT_TRUE(HasClass(beta, {3, 1, 1}));
  EXPECT_FALSE(beta.minimal);
  EXPECT_EQ(beta.mcmillan, 1);

  EXPECT_TRUE(Classify(fixtures::LZeta()).memberships.empty());
}

TEST(Classify, MembershipsReverify) {
  for (const auto& f : fixtures::InertiaFixtures()) {
    const ClassificationReport report = Classify(f.sys);
    EXPECT_FALSE(report.memberships.empty()) << f.name;
    for (const auto& m : report.memberships) {
      const ComplexMatrix h = BlockDiag(m.certificate.Hhat, 1);
      EXPECT_GE(OracleMinEig(h * f.sys.L + f.sys.L.adjoint() * h), -1e-8) << f.name;
      EXPECT_EQ(InertiaOf(m.certificate.Hhat).neg, m.cls.nu);
    }
  }
}

TEST(Construct, CertifiedBySignature) {
  for (const GpClass cls : {GpClass{3, 1, 1}, GpClass{3, 0, 1}, GpClass{4, 2, 2}, GpClass{2, 1, 1}}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const SystemMatrix sys = Construct(cls, seed);
      EXPECT_EQ(sys.size(), cls.r);
      EXPECT_EQ(sys.p, cls.p);
      const ComplexMatrix h = BlockDiag(Signature(cls.nu, cls.r - cls.p), cls.p);
      EXPECT_GE(OracleMinEig(h * sys.L + sys.L.adjoint() * h), -1e-9 * std::max(1.0, sys.L.norm()));
      EXPECT_TRUE(BoundaryOracle(Partition(sys)).is_gp);
    }
  }
  EXPECT_THROW(Construct(GpClass{3, 3, 1}, 1), std::invalid_argument);
}

TEST(Construct, NuZeroKeepsPolesOutOfLeftHalfPlane) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Realization re = Partition(Construct(GpClass{4, 0, 1}, seed));
    Eigen::ComplexEigenSolver<ComplexMatrix> es(re.A, false);
    EXPECT_GE(es.eigenvalues().real().minCoeff(), -1e-9);
  }
}

TEST(JTransform, GammaExample) {
  const auto [left, right] = JTransform(Partition(fixtures::LGamma()), 1);
  EXPECT_TRUE(ApproxEqual(left.A, RealMatrix({{-1, 0}, {0, -1}}), 0.0));
  for (const Complex s : {Complex(0.5, 0), Complex(2, 1), Complex(-3, 0.5), Complex(0, 4), Complex(7, -2)}) {
    EXPECT_NEAR(std::abs(Evaluate(left, s)(0, 0) - 1.0 / (s + 1.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(Evaluate(right, s)(0, 0) - 1.0 / (s + 1.0)), 0.0, 1e-12);
  }
}

TEST(JTransform, IdentityWhenNuIsN) {
  const Realization re = Partition(fixtures::LAlpha());
  const auto [left, right] = JTransform(re, 2);
  EXPECT_EQ(left.A, re.A);
  EXPECT_EQ(right.C, re.C);
  EXPECT_THROW(JTransform(re, 3), std::invalid_argument);
}

TEST(JTransform, OutputsAgreeAndYieldPositiveCertificate) {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Realization re = Partition(Construct(GpClass{3, 1, 1}, seed));
    const auto [left, right] = JTransform(re, 1);
    for (int k = 0; k < 5; ++k) {
      const Complex s(normal(rng), normal(rng));
      const ComplexMatrix f = Evaluate(left, s);
      EXPECT_LE((Evaluate(right, s) - f).norm(), 1e-8 * (1 + f.norm()));
    }
    // diag(E J, 1) = -I certifies both outputs
    const ComplexMatrix neg = -ComplexMatrix::Identity(2, 2);
    EXPECT_TRUE(CheckCertificate(left, neg, 1e-9).accepted);
    EXPECT_TRUE(CheckCertificate(right, neg, 1e-9).accepted);
  }
}

}  // namespace
}  // namespace gpreal
