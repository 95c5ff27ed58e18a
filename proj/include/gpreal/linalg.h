#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gpreal {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Raised when a computation is well posed but numerically impossible
/// (singular blocks, evaluation at a pole, ...). Dimension and domain
/// violations use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Eigenvalue counts in the open left half plane, on the imaginary axis,
/// and in the open right half plane (for Hermitian input: negative, zero,
/// positive).
struct Inertia {
  int neg = 0;
  int zero = 0;
  int pos = 0;

  int dim() const { return neg + zero + pos; }
  bool operator==(const Inertia&) const = default;
};

std::string ToString(const Inertia& inertia);

enum class PsdStatus {
  kPositiveDefinite,
  kPositiveSemidefinite,
  kIndefinite,
  kNegativeSemidefinite,
  kNegativeDefinite,
};

std::string ToString(PsdStatus status);

struct PsdVerdict {
  PsdStatus status = PsdStatus::kIndefinite;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double tolerance_used = 0.0;

  /// True for positive definite and positive semidefinite verdicts.
  bool IsPsd() const {
    return status == PsdStatus::kPositiveDefinite ||
           status == PsdStatus::kPositiveSemidefinite;
  }
};

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;   // unitary, columns match `values`
};

/// Max row sum norm.
double InfNorm(const ComplexMatrix& m);

/// 1e-9 * max(1, ||M||_inf); the tolerance every verdict falls back to.
double DefaultTolerance(const ComplexMatrix& m);

ComplexMatrix HermitianPart(const ComplexMatrix& m);
ComplexMatrix SkewHermitianPart(const ComplexMatrix& m);

/// Throws std::invalid_argument unless `m` is square.
void RequireSquare(const ComplexMatrix& m, const char* what);

/// Throws std::invalid_argument unless ||M - M*||_inf <= tol.
void RequireHermitian(const ComplexMatrix& m, double tol, const char* what);

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. The input is symmetrized before iterating. Eigenvalues come
/// back in ascending order; ties keep their diagonal order.
HermitianEigen HermitianEig(const ComplexMatrix& m,
                            std::optional<double> tol = std::nullopt);

/// Eigenvalues of a general square matrix (complex Schur form), sorted by
/// real part then imaginary part.
std::vector<Complex> Spectrum(const ComplexMatrix& m);

/// Inertia counted by eigenvalue real part; |Re(lambda)| <= tol counts as
/// zero. Hermitian input is routed through HermitianEig.
Inertia InertiaOf(const ComplexMatrix& m,
                  std::optional<double> tol = std::nullopt);

PsdVerdict PsdCheck(const ComplexMatrix& m,
                    std::optional<double> tol = std::nullopt);

/// For M = [[P, R], [R*, S]] returns P - R S^{-1} R*, where P is
/// split x split.
ComplexMatrix SchurComplement(const ComplexMatrix& m, int split);

/// Singular values of `m` in decreasing order.
Eigen::VectorXd SingularValues(const ComplexMatrix& m);

/// Count of singular values above rel_tol * sigma_max * max(rows, cols).
int NumericalRank(const ComplexMatrix& m, double rel_tol = 1e-9);

/// Orthonormal basis (columns) of the numerical null space, with the same
/// rank decision as NumericalRank.
ComplexMatrix NullSpace(const ComplexMatrix& m, double rel_tol = 1e-9);

/// Orthonormal basis of the numerical column space.
ComplexMatrix RangeBasis(const ComplexMatrix& m, double rel_tol = 1e-9);

/// diag(-I_nu, I_{l-nu}).
ComplexMatrix Signature(int nu, int l);

struct Congruence {
  ComplexMatrix V;  // V* H V = Signature(nu, dim)
  int nu = 0;
};

/// Finds a nonsingular V with V* H V = diag(-I_nu, I_{r-nu}). Throws
/// SingularMatrixError when some eigenvalue of H satisfies |lambda| <= tol.
Congruence CongruenceToSignature(const ComplexMatrix& h,
                                 std::optional<double> tol = std::nullopt);

/// Solves m * x = rhs; throws SingularMatrixError on a singular m.
ComplexMatrix Solve(const ComplexMatrix& m, const ComplexMatrix& rhs);

ComplexMatrix Inverse(const ComplexMatrix& m);

/// 2-norm condition number from singular values (infinity if singular).
double ConditionNumber(const ComplexMatrix& m);

/// True when every entry is within tol of the corresponding entry.
bool ApproxEqual(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// Builds a real matrix from nested initializer lists.
ComplexMatrix RealMatrix(std::initializer_list<std::initializer_list<double>> rows);

}  // namespace gpreal
