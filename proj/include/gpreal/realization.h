#pragma once

#include <optional>
#include <vector>

#include "gpreal/linalg.h"

namespace gpreal {

/// Raised by Evaluate when s sits on the spectrum of A.
class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// State-space quadruple for Psi(s) = C (sI - A)^{-1} B + D with n states
/// and p inputs/outputs.
struct Realization {
  ComplexMatrix A;  // n x n
  ComplexMatrix B;  // n x p
  ComplexMatrix C;  // p x n
  ComplexMatrix D;  // p x p

  int states() const { return static_cast<int>(A.rows()); }
  int ports() const { return static_cast<int>(D.rows()); }

  /// Throws std::invalid_argument on incoherent block sizes.
  void Validate() const;

  /// True when every block has zero imaginary part.
  bool IsReal() const;
};

/// The (n+p) x (n+p) block matrix L = [[A, B], [C, D]] with its partition.
struct SystemMatrix {
  ComplexMatrix L;
  int p = 1;

  int size() const { return static_cast<int>(L.rows()); }
  int states() const { return size() - p; }

  void Validate() const;
};

SystemMatrix Assemble(const Realization& re);
Realization Partition(const SystemMatrix& sys);

/// Psi(s) through a linear solve with sI - A. Throws PoleError when s lies
/// within `tol` of an eigenvalue of A.
ComplexMatrix Evaluate(const Realization& re, Complex s,
                       std::optional<double> tol = std::nullopt);

/// Polynomial coefficients in ascending degree.
using Polynomial = std::vector<Complex>;

Complex EvaluatePolynomial(const Polynomial& poly, Complex s);

/// Roots of a polynomial via the companion matrix.
std::vector<Complex> PolynomialRoots(const Polynomial& poly);

/// Trims trailing coefficients with |c| <= tol.
Polynomial TrimPolynomial(Polynomial poly, double tol = 0.0);

/// Scalar transfer function numerator / denominator in raw (unreduced) form.
/// The denominator is the monic characteristic polynomial of A.
struct ScalarRational {
  Polynomial numerator;
  Polynomial denominator;
  /// Set when the coefficients came out of the exact integer recurrence.
  bool exact = false;

  Complex operator()(Complex s) const;

  /// Cancels common numerator/denominator roots that agree within tol
  /// (relative to max(1, |root|)).
  ScalarRational Reduced(double tol = 1e-7) const;
};

/// Faddeev-LeVerrier: det(sI - A) and C adj(sI - A) B + D det(sI - A).
/// Uses exact Gaussian-integer arithmetic when every entry is integral and
/// small enough; falls back to floating point otherwise. Requires p = 1.
ScalarRational ToScalarRational(const Realization& re);

/// [B, AB, ..., A^{n-1}B].
ComplexMatrix Ctrb(const ComplexMatrix& a, const ComplexMatrix& b);

/// [C; CA; ...; CA^{n-1}], equal to Ctrb(A*, C*)*.
ComplexMatrix Obsv(const ComplexMatrix& a, const ComplexMatrix& c);

/// Rank of the Hankel product Obsv(A, C) * Ctrb(A, B).
int McMillanDegree(const Realization& re, double rel_tol = 1e-9);

bool IsMinimal(const Realization& re, double rel_tol = 1e-9);

/// (Vhat^{-1} A Vhat, Vhat^{-1} B, C Vhat, D).
Realization CoordinateTransform(const Realization& re, const ComplexMatrix& vhat);

/// (1 - t) L1 + t L2 with the shared partition.
SystemMatrix ConvexCombine(const SystemMatrix& l1, const SystemMatrix& l2,
                           double t);

/// n - rank(Obsv(A, Qhat)).
int UnobservableDim(const ComplexMatrix& a, const ComplexMatrix& qhat,
                    double rel_tol = 1e-9);

/// Kalman reduction to the controllable and observable part, through
/// orthonormal bases of the controllable subspace and then of the
/// observable subspace of the result.
Realization MinimalRealization(const Realization& re, double rel_tol = 1e-9);

/// Eigenvalues of A in a minimal realization of re.
std::vector<Complex> Poles(const Realization& re, double rel_tol = 1e-9);

}  // namespace gpreal
