#pragma once

#include <limits>
#include <vector>

#include "gpreal/linalg.h"

// Small dense linear-matrix-inequality machinery shared by the certificate
// and feedback searches. Problems here have a handful of variables and
// blocks of size <= ~10, so everything is dense and direct.
namespace gpreal::lmi {

/// F(x) = base + sum_k x_k * terms[k]; all matrices Hermitian.
struct AffineBlock {
  ComplexMatrix base;
  std::vector<ComplexMatrix> terms;

  ComplexMatrix At(const Eigen::VectorXd& x) const;
};

/// maximize t  s.t.  F_j(x) >= t I  (objective blocks),
///                   G_j(x) >  0    (fixed blocks),
///                   ||x||_2 <= radius.
struct Problem {
  int num_vars = 0;
  std::vector<AffineBlock> objective;
  std::vector<AffineBlock> fixed;
  double radius = 1.0;
};

struct Options {
  /// Stop as soon as the iterate certifies t above this value.
  double stop_above = std::numeric_limits<double>::infinity();
  /// Stop once the duality-gap bound shows t* < -stop_below.
  double stop_below = std::numeric_limits<double>::infinity();
  /// Final barrier gap (total barrier degree / mu).
  double gap = 1e-11;
  int max_newton_steps = 4000;
};

struct Result {
  Eigen::VectorXd x;
  double t = 0.0;
  /// Upper bound on the optimal t from the last centering (t + degree/mu).
  double t_upper = 0.0;
  int newton_steps = 0;
};

/// Log-barrier path following from a strictly feasible x0 (fixed blocks
/// positive definite, ||x0|| < radius).
Result MaximizeMinEigenvalue(const Problem& problem, const Eigen::VectorXd& x0,
                             const Options& options = {});

/// min over objective blocks of lambda_min(F_j(x)).
double MinObjectiveEigenvalue(const Problem& problem, const Eigen::VectorXd& x);

/// True when every fixed block is positive definite at x.
bool FixedBlocksFeasible(const Problem& problem, const Eigen::VectorXd& x);

/// Repeatedly forces the near-null eigenvectors of the objective blocks to
/// be exact null vectors by a minimum-norm linear correction of x. Returns
/// the best iterate found (by MinObjectiveEigenvalue). Used when the
/// optimum lies on the boundary of the PSD cone.
Eigen::VectorXd PolishKernel(const Problem& problem, Eigen::VectorXd x,
                             int max_iterations = 25);

/// Frobenius-orthonormal basis of n x n Hermitian matrices. With
/// real_only the basis spans the real symmetric matrices (n(n+1)/2
/// elements), otherwise all Hermitian matrices (n^2 elements).
std::vector<ComplexMatrix> HermitianBasis(int n, bool real_only);

ComplexMatrix Compose(const std::vector<ComplexMatrix>& basis,
                      const Eigen::VectorXd& coords);

/// Coordinates of a Hermitian matrix in an orthonormal basis.
Eigen::VectorXd Decompose(const std::vector<ComplexMatrix>& basis,
                          const ComplexMatrix& h);

/// Minimum-norm least-squares solution of the real linear system
/// sum_k x_k * maps[k] = rhs, where each map is a complex matrix and the
/// equations are the real and imaginary parts of every entry.
Eigen::VectorXd SolveRealLeastSquares(const std::vector<ComplexMatrix>& maps,
                                      const ComplexMatrix& rhs,
                                      double* residual = nullptr);

/// Orthonormal basis (columns) of {x : sum_k x_k maps[k] = 0}.
Eigen::MatrixXd RealNullSpace(const std::vector<ComplexMatrix>& maps,
                              double rel_tol = 1e-10);

}  // namespace gpreal::lmi
