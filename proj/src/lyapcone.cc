#include "gpreal/lyapcone.h"

#include <cmath>
#include <numbers>
#include <random>

namespace gpreal {

std::string ToString(ConeStatus status) {
  switch (status) {
    case ConeStatus::strict: return "strict";
    case ConeStatus::closed: return "closed";
    case ConeStatus::outside: return "outside";
  }
  return "unknown";
}

ConeMembership Member(const ComplexMatrix& l, const ComplexMatrix& h,
                      std::optional<double> tol) {
  RequireSquare(l, "Member");
  RequireSquare(h, "Member");
  if (l.rows() != h.rows()) {
    throw std::invalid_argument("Member: L and H differ in size");
  }
  RequireHermitian(h, 1e-12 * std::max(1.0, InfNorm(h)), "Member");
  const HermitianEigen h_eig = HermitianEig(h);
  const double sing = 1e-12 * std::max(1.0, InfNorm(h));
  for (int i = 0; i < h_eig.values.size(); ++i) {
    if (std::abs(h_eig.values(i)) <= sing) {
      throw SingularMatrixError("Member: H is singular");
    }
  }

  ConeMembership out;
  const ComplexMatrix hl = h * l;
  out.Q = HermitianPart(hl + hl.adjoint());
  out.tolerance_used = tol.value_or(DefaultTolerance(out.Q));
  const PsdVerdict verdict = PsdCheck(out.Q, out.tolerance_used);
  out.min_eigenvalue = verdict.min_eigenvalue;
  if (verdict.status == PsdStatus::kPositiveDefinite) {
    out.status = ConeStatus::strict;
  } else if (verdict.status == PsdStatus::kPositiveSemidefinite) {
    out.status = ConeStatus::closed;
  } else {
    out.status = ConeStatus::outside;
  }
  return out;
}

PTDecomposition DecomposeLI(const ComplexMatrix& w, std::optional<double> tol) {
  RequireSquare(w, "DecomposeLI");
  PTDecomposition out;
  out.P = (w + w.adjoint()) / 2.0;
  out.T = w - out.P;
  const PsdVerdict verdict = PsdCheck(out.P, tol.value_or(DefaultTolerance(w)));
  if (!verdict.IsPsd()) {
    throw std::invalid_argument("DecomposeLI: Hermitian part is not PSD");
  }
  return out;
}

int ProjectionAngleCount(int r) { return 2 * r - 1; }

ComplexMatrix ProjectionFromAngles(int r, const std::vector<double>& angles) {
  if (r < 1) throw std::invalid_argument("ProjectionFromAngles: r must be positive");
  const int canonical = ProjectionAngleCount(r);
  const int overparam = r * (r - 1);
  const int count = static_cast<int>(angles.size());
  if (count != canonical && count != overparam) {
    throw std::invalid_argument("ProjectionFromAngles: expected " + std::to_string(canonical) +
                                " or " + std::to_string(overparam) + " angles, got " +
                                std::to_string(count));
  }
  auto angle = [&](int k) { return k < count ? angles[k] : 0.0; };

  // theta_1..theta_{r-1}, then phases eta_1..eta_r
  Eigen::VectorXd mag(r);
  for (int k = 0; k < r; ++k) {
    double v = (k == 0) ? (r > 1 ? std::cos(angle(0)) : 1.0) : std::sin(angle(k - 1));
    for (int j = std::max(k, 1); j < r; ++j) v *= std::cos(angle(j));
    mag(k) = v;
  }
  ComplexVector x(r);
  for (int k = 0; k < r; ++k) {
    x(k) = mag(k) * std::polar(1.0, angle(r - 1 + k));
  }
  x /= x.norm();
  return x * x.adjoint();
}

ComplexMatrix SamplePsd(int r, const std::vector<double>& weights,
                        const std::vector<ComplexMatrix>& projections) {
  if (weights.size() > static_cast<size_t>(r) || weights.size() > projections.size()) {
    throw std::invalid_argument("SamplePsd: too many weights");
  }
  ComplexMatrix out = ComplexMatrix::Zero(r, r);
  for (size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] < 0.0) throw std::invalid_argument("SamplePsd: negative weight");
    if (projections[j].rows() != r || projections[j].cols() != r) {
      throw std::invalid_argument("SamplePsd: projection has wrong size");
    }
    out += weights[j] * projections[j];
  }
  return HermitianPart(out);
}

ComplexMatrix SampleSkew(int r, const std::vector<double>& rhos,
                         const std::vector<ComplexMatrix>& projections) {
  if (rhos.size() > static_cast<size_t>(r) || rhos.size() > projections.size()) {
    throw std::invalid_argument("SampleSkew: too many coefficients");
  }
  ComplexMatrix out = ComplexMatrix::Zero(r, r);
  for (size_t j = 0; j < rhos.size(); ++j) {
    if (projections[j].rows() != r || projections[j].cols() != r) {
      throw std::invalid_argument("SampleSkew: projection has wrong size");
    }
    out += Complex(0.0, rhos[j]) * projections[j];
  }
  return SkewHermitianPart(out);
}

namespace {

std::vector<ComplexMatrix> DrawProjections(int r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  std::vector<ComplexMatrix> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < r) {
    std::vector<double> angles(ProjectionAngleCount(r));
    for (double& a : angles) a = uniform(rng);
    ComplexMatrix pi = ProjectionFromAngles(r, angles);
    bool distinct = true;
    for (const auto& other : out) {
      if (std::abs((pi * other).trace()) > 1.0 - 1e-6) {
        distinct = false;
        break;
      }
    }
    if (distinct || ++attempts > 1000) out.push_back(std::move(pi));
  }
  return out;
}

}  // namespace

std::vector<ComplexMatrix> RandomProjections(int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return DrawProjections(r, rng);
}

ComplexMatrix SampleIdentityCone(int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto psd_projections = DrawProjections(r, rng);
  const auto skew_projections = DrawProjections(r, rng);
  std::vector<double> weights(r), rhos(r);
  for (double& w : weights) w = std::abs(normal(rng));
  for (double& rho : rhos) rho = normal(rng);
  return SamplePsd(r, weights, psd_projections) + SampleSkew(r, rhos, skew_projections);
}

ComplexMatrix SampleCone(const ComplexMatrix& h, std::uint64_t seed) {
  RequireSquare(h, "SampleCone");
  RequireHermitian(h, 1e-12 * std::max(1.0, InfNorm(h)), "SampleCone");
  const int r = static_cast<int>(h.rows());
  const Congruence cong = CongruenceToSignature(h);
  const ComplexMatrix w = SampleIdentityCone(r, seed);
  const ComplexMatrix ew = Signature(cong.nu, r) * w;
  return cong.V * ew * Inverse(cong.V);
}

InvolutionImages InvolutionMap(const ComplexMatrix& l, const ComplexMatrix& e,
                               const ComplexMatrix& h, double tol) {
  RequireSquare(e, "InvolutionMap");
  if (e.rows() != l.rows() || h.rows() != l.rows()) {
    throw std::invalid_argument("InvolutionMap: dimension mismatch");
  }
  const double scale = std::max(1.0, InfNorm(e));
  const ComplexMatrix id = ComplexMatrix::Identity(e.rows(), e.cols());
  if (!ApproxEqual(e * e, id, tol * scale * scale)) {
    throw std::invalid_argument("InvolutionMap: E is not an involution");
  }
  if (!ApproxEqual(e * h, h * e, tol * scale * std::max(1.0, InfNorm(h)))) {
    throw std::invalid_argument("InvolutionMap: E does not commute with H");
  }
  return {e * l, l * e};
}

bool AdjointRelationHolds(const ComplexMatrix& l, const ComplexMatrix& h,
                          std::optional<double> tol) {
  const bool direct = Member(l, h, tol).IsMember();
  const bool adjoint = Member(l.adjoint(), Inverse(h), tol).IsMember();
  return direct == adjoint;
}

bool MatchesIntersectionPattern(const ComplexMatrix& l, int nu, int eta,
                                std::optional<double> tol) {
  RequireSquare(l, "MatchesIntersectionPattern");
  const int r = static_cast<int>(l.rows());
  if (nu < 0 || eta < 1 || nu + eta > r) {
    throw std::invalid_argument("MatchesIntersectionPattern: need eta >= 1 and nu + eta <= r");
  }
  const double eps = tol.value_or(DefaultTolerance(l));
  const int rest = r - nu - eta;

  const ComplexMatrix mid_rows = l.middleRows(nu, eta);
  const ComplexMatrix mid_cols = l.middleCols(nu, eta);
  const ComplexMatrix t = l.block(nu, nu, eta, eta);
  if ((t + t.adjoint()).cwiseAbs().maxCoeff() > eps) return false;
  for (int j = 0; j < r; ++j) {
    if (j >= nu && j < nu + eta) continue;
    if (mid_rows.col(j).cwiseAbs().maxCoeff() > eps) return false;
    if (mid_cols.row(j).cwiseAbs().maxCoeff() > eps) return false;
  }

  const ComplexMatrix l11 = l.topLeftCorner(nu, nu);
  const ComplexMatrix l13 = l.topRightCorner(nu, rest);
  const ComplexMatrix l31 = l.bottomLeftCorner(rest, nu);
  const ComplexMatrix l33 = l.bottomRightCorner(rest, rest);
  ComplexMatrix g(nu + rest, nu + rest);
  g.topLeftCorner(nu, nu) = -(l11 + l11.adjoint());
  g.topRightCorner(nu, rest) = l31.adjoint() - l13;
  g.bottomLeftCorner(rest, nu) = (l31.adjoint() - l13).adjoint();
  g.bottomRightCorner(rest, rest) = l33 + l33.adjoint();
  if (g.size() == 0) return true;
  return PsdCheck(HermitianPart(g), eps).IsPsd();
}

ComplexMatrix MaximalityWitness(const ComplexMatrix& l) {
  RequireSquare(l, "MaximalityWitness");
  const HermitianEigen eig = HermitianEig(l + l.adjoint());
  const double beta = -eig.values(0);
  if (!(beta > 0.0)) {
    throw std::invalid_argument("MaximalityWitness: L is in the closed cone of I");
  }
  const int r = static_cast<int>(l.rows());
  return (beta / 4.0) * ComplexMatrix::Identity(r, r) + (l.adjoint() - l) / 2.0;
}

}  // namespace gpreal
