#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gpreal/linalg.h"

namespace gpreal {

enum class ConeStatus { strict, closed, outside };

std::string ToString(ConeStatus status);

struct ConeMembership {
  ConeStatus status = ConeStatus::outside;
  ComplexMatrix Q;  // H L + L* H, symmetrized
  double min_eigenvalue = 0.0;
  double tolerance_used = 0.0;

  bool IsMember() const { return status != ConeStatus::outside; }
};

/// Membership of L in the closed cone {L : H L + L* H >= 0}. "strict" means
/// the residual is positive definite beyond tol.
ConeMembership Member(const ComplexMatrix& l, const ComplexMatrix& h,
                      std::optional<double> tol = std::nullopt);

struct PTDecomposition {
  ComplexMatrix P;  // Hermitian part, PSD
  ComplexMatrix T;  // skew-Hermitian part
};

/// W = P + T with P = (W + W*)/2 and T = (W - W*)/2. Throws
/// std::invalid_argument when P is not PSD within tol.
PTDecomposition DecomposeLI(const ComplexMatrix& w,
                            std::optional<double> tol = std::nullopt);

/// Number of angles expected by ProjectionFromAngles: r - 1 spherical
/// angles followed by r phases.
int ProjectionAngleCount(int r);

/// Rank-one orthogonal projection x x* with x a unit vector in polar
/// coordinates. Accepts either 2r - 1 angles or r(r - 1) angles (the
/// over-parameterized count); entries past 2r - 1 are ignored and missing
/// phases are taken as zero.
ComplexMatrix ProjectionFromAngles(int r, const std::vector<double>& angles);

/// sum_j weights[j] * projections[j]; weights must be nonnegative.
ComplexMatrix SamplePsd(int r, const std::vector<double>& weights,
                        const std::vector<ComplexMatrix>& projections);

/// i * sum_j rhos[j] * projections[j], anti-symmetrized.
ComplexMatrix SampleSkew(int r, const std::vector<double>& rhos,
                         const std::vector<ComplexMatrix>& projections);

/// r distinct random projections drawn with a seeded generator.
std::vector<ComplexMatrix> RandomProjections(int r, std::uint64_t seed);

/// Random W = P + T in the closed cone of the identity.
ComplexMatrix SampleIdentityCone(int r, std::uint64_t seed);

/// Random member of the closed cone of H: V (E W) V^{-1} where V* H V = E
/// and W is drawn by SampleIdentityCone.
ComplexMatrix SampleCone(const ComplexMatrix& h, std::uint64_t seed);

struct InvolutionImages {
  ComplexMatrix EL;
  ComplexMatrix LE;
};

/// (E L, L E) for an involution E commuting with H; both lie in the cone of
/// E H when L lies in the cone of H. Throws std::invalid_argument when E is
/// not an involution or does not commute with H.
InvolutionImages InvolutionMap(const ComplexMatrix& l, const ComplexMatrix& e,
                               const ComplexMatrix& h, double tol = 1e-10);

/// [L in cone(H)] <=> [L* in cone(H^{-1})] for this instance.
bool AdjointRelationHolds(const ComplexMatrix& l, const ComplexMatrix& h,
                          std::optional<double> tol = std::nullopt);

/// Block structure of L in cone(E_nu) and cone(E_{nu+eta}) simultaneously:
/// the eta middle rows and columns vanish except a skew-Hermitian diagonal
/// block, and the remaining corner blocks satisfy
/// [[-2 Herm(L11), L31* - L13], [., 2 Herm(L33)]] >= 0.
bool MatchesIntersectionPattern(const ComplexMatrix& l, int nu, int eta,
                                std::optional<double> tol = std::nullopt);

/// For L outside the closed cone of I with Hermitian-part minimum
/// eigenvalue -beta < 0, returns A = (beta/4) I + (L* - L)/2, which lies in
/// the open cone of I while A + L has an eigenvalue in the open left half
/// plane. Throws std::invalid_argument when L is a member.
ComplexMatrix MaximalityWitness(const ComplexMatrix& l);

}  // namespace gpreal
