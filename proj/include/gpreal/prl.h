#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gpreal/linalg.h"
#include "gpreal/realization.h"

namespace gpreal {

/// H = diag(Hhat, I_p) together with the residual Q = H L + L* H.
struct LyapunovCertificate {
  ComplexMatrix Hhat;
  ComplexMatrix Q;
  int nu = 0;              // negative eigenvalues of Hhat
  int pole_bound_neg = 0;  // at most nu poles in the open left half plane
  int pole_bound_pos = 0;  // at most n - nu in the open right half plane
  double min_eigenvalue = 0.0;  // of Q
  double tolerance_used = 0.0;
  bool positive = false;  // nu == n
};

/// H L + L* H with H = diag(Hhat, I_p), symmetrized.
ComplexMatrix LyapunovResidual(const Realization& re, const ComplexMatrix& hhat);

/// Hhat Ahat + Ahat* Hhat - Hhat R Hhat - S with Ahat = A - B (D+D*)^{-1} C,
/// R = B (D+D*)^{-1} B*, S = C* (D+D*)^{-1} C. Throws std::invalid_argument
/// unless D + D* is positive definite.
ComplexMatrix RiccatiM(const Realization& re, const ComplexMatrix& hhat);

/// [Q >= 0] <=> [M >= 0] for this instance.
bool RiccatiEquivalenceHolds(const Realization& re, const ComplexMatrix& hhat,
                             std::optional<double> tol = std::nullopt);

struct CertificateCheck {
  bool accepted = false;
  LyapunovCertificate certificate;  // filled in either case
};

/// Accepts when Q >= -tol. Throws SingularMatrixError when some eigenvalue of
/// Hhat is below 1e-6 * ||Hhat||_2 in modulus.
CertificateCheck CheckCertificate(const Realization& re, const ComplexMatrix& hhat,
                                  std::optional<double> tol = std::nullopt);

struct LoewyBounds {
  int nu = 0;  // negative eigenvalues of Hhat
  int m = 0;   // unobservable dimension of (A, Qhat)
  int lo_neg = 0;
  int hi_neg = 0;
  int lo_pos = 0;
  int hi_pos = 0;

  bool Contains(const Inertia& inertia) const {
    return inertia.neg >= lo_neg && inertia.neg <= hi_neg &&
           inertia.pos >= lo_pos && inertia.pos <= hi_pos;
  }
};

/// Inertia bounds for A given Hhat A + A* Hhat = Qhat >= 0. Throws
/// std::invalid_argument when Qhat is indefinite beyond tol.
LoewyBounds ComputeLoewyBounds(const ComplexMatrix& a, const ComplexMatrix& hhat,
                               std::optional<double> tol = std::nullopt);

struct BoundaryProfile {
  std::vector<double> omegas;
  std::vector<double> min_eigs;
  std::vector<double> excluded;
};

struct BoundaryReport {
  BoundaryProfile profile;
  bool is_gp = true;
  bool vacuous = false;  // every sample was excluded
  double min_eigenvalue = 0.0;
  double argmin_omega = 0.0;
  double tolerance_used = 1e-7;
};

/// Samples lambda_min(F(i w) + F(i w)*) on a symmetric logarithmic grid plus
/// w = 0 and midpoints between imaginary-axis poles, skipping w within
/// 1e-6 of such a pole.
BoundaryReport BoundaryOracle(const Realization& re, int n_samples = 200,
                              double tol = 1e-7);

enum class SearchStatus { found, infeasible };

struct CertificateSearchOptions {
  std::optional<int> target_nu;  // any when empty
  std::optional<double> tol;
  std::uint64_t seed = 1;
  int random_restarts = 4;
  std::vector<double> radii = {1.0, 10.0, 100.0};
  bool use_riccati = true;
};

struct CertificateSearch {
  SearchStatus status = SearchStatus::infeasible;
  LyapunovCertificate certificate;  // valid when found
  std::string method;               // riccati, seed, lmi
  bool perturbation_based = false;
  double perturbation = 0.0;
  double best_min_eigenvalue = -std::numeric_limits<double>::infinity();
  ComplexMatrix best_hhat;

  bool found() const { return status == SearchStatus::found; }
};

CertificateSearch FindCertificate(const Realization& re,
                                  const CertificateSearchOptions& options = {});

enum class AreStatus { ok, no_solution, ill_separated };

std::string ToString(AreStatus status);

enum class AreBranch { left, right };

struct AreSolution {
  AreStatus status = AreStatus::no_solution;
  ComplexMatrix Hhat;
  double residual = 0.0;  // ||M(Hhat)||_inf
};

/// Riccati equation M(Hhat) = 0 from the n-dimensional invariant subspace of
/// [[Ahat, -R], [S, -Ahat*]] belonging to the left or right half plane.
AreSolution SolveAre(const Realization& re, AreBranch branch);

struct PositivityReport {
  bool positive = false;
  bool certified = false;
  bool sampled_positive = false;
  std::optional<LyapunovCertificate> certificate;
};

/// Certified when a certificate with nu = n exists; otherwise falls back to
/// sampling F(s) + F(s)* over the right half plane together with the
/// boundary oracle and the pole locations of a minimal realization.
PositivityReport IsPositive(const Realization& re, std::optional<double> tol = std::nullopt);

}  // namespace gpreal
