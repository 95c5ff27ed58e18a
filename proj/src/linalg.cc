#include "gpreal/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gpreal {

namespace {

constexpr int kMaxJacobiSweeps = 100;

double OffDiagonalNorm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// Applies a <- G* a G and v <- v G for the unitary G acting on coordinates
// (p, q) with entries g_pp, g_pq, g_qp, g_qq.
void ApplyRotation(ComplexMatrix& a, ComplexMatrix& v, int p, int q,
                   Complex g_pp, Complex g_pq, Complex g_qp, Complex g_qq) {
  const int n = static_cast<int>(a.rows());
  for (int k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * g_pp + akq * g_qp;
    a(k, q) = akp * g_pq + akq * g_qq;
  }
  for (int k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
    a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
  }
  for (int k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * g_pp + vkq * g_qp;
    v(k, q) = vkp * g_pq + vkq * g_qq;
  }
}

}  // namespace

std::string ToString(const Inertia& inertia) {
  return "(" + std::to_string(inertia.neg) + "," +
         std::to_string(inertia.zero) + "," + std::to_string(inertia.pos) +
         ")";
}

std::string ToString(PsdStatus status) {
  switch (status) {
    case PsdStatus::kPositiveDefinite:
      return "positive_definite";
    case PsdStatus::kPositiveSemidefinite:
      return "positive_semidefinite";
    case PsdStatus::kIndefinite:
      return "indefinite";
    case PsdStatus::kNegativeSemidefinite:
      return "negative_semidefinite";
    case PsdStatus::kNegativeDefinite:
      return "negative_definite";
  }
  return "unknown";
}

double InfNorm(const ComplexMatrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    best = std::max(best, m.row(i).cwiseAbs().sum());
  }
  return best;
}

double DefaultTolerance(const ComplexMatrix& m) {
  return 1e-9 * std::max(1.0, InfNorm(m));
}

ComplexMatrix HermitianPart(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

ComplexMatrix SkewHermitianPart(const ComplexMatrix& m) {
  return 0.5 * (m - m.adjoint());
}

void RequireSquare(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square, got " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
}

void RequireHermitian(const ComplexMatrix& m, double tol, const char* what) {
  RequireSquare(m, what);
  if (InfNorm(m - m.adjoint()) > tol) {
    throw std::invalid_argument(std::string(what) +
                                ": matrix is not Hermitian within tolerance");
  }
}

HermitianEigen HermitianEig(const ComplexMatrix& m, std::optional<double> tol) {
  RequireHermitian(m, tol.value_or(DefaultTolerance(m)), "HermitianEig");
  const int n = static_cast<int>(m.rows());
  ComplexMatrix a = HermitianPart(m);
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  const double scale = a.norm();
  const double target = std::numeric_limits<double>::epsilon() * scale;
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (OffDiagonalNorm(a) <= target) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double abs_pq = std::abs(apq);
        if (abs_pq == 0.0 || abs_pq <= 1e-3 * target / std::max(1, n)) continue;
        // Phase-rotate coordinate q so the pivot becomes real, then use the
        // classical real rotation.
        const Complex phase_conj = std::conj(apq) / abs_pq;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * abs_pq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        ApplyRotation(a, v, p, q, c, s, -s * phase_conj, c * phase_conj);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a(i, i).real() < a(j, j).real();
  });
  HermitianEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

std::vector<Complex> Spectrum(const ComplexMatrix& m) {
  RequireSquare(m, "Spectrum");
  std::vector<Complex> out;
  if (m.rows() == 0) return out;
  Eigen::ComplexSchur<ComplexMatrix> schur(m, /*computeU=*/false);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("Spectrum: Schur iteration did not converge");
  }
  const ComplexMatrix& t = schur.matrixT();
  for (int i = 0; i < t.rows(); ++i) out.push_back(t(i, i));
  std::stable_sort(out.begin(), out.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

Inertia InertiaOf(const ComplexMatrix& m, std::optional<double> tol) {
  RequireSquare(m, "InertiaOf");
  const double eps = tol.value_or(DefaultTolerance(m));
  Inertia inertia;
  auto count = [&](double re) {
    if (re < -eps) {
      ++inertia.neg;
    } else if (re > eps) {
      ++inertia.pos;
    } else {
      ++inertia.zero;
    }
  };
  if (InfNorm(m - m.adjoint()) <= DefaultTolerance(m)) {
    const HermitianEigen eig = HermitianEig(m);
    for (int i = 0; i < eig.values.size(); ++i) count(eig.values(i));
  } else {
    for (const Complex& lambda : Spectrum(m)) count(lambda.real());
  }
  return inertia;
}

PsdVerdict PsdCheck(const ComplexMatrix& m, std::optional<double> tol) {
  const double eps = tol.value_or(DefaultTolerance(m));
  RequireHermitian(m, std::max(eps, DefaultTolerance(m)), "PsdCheck");
  PsdVerdict verdict;
  verdict.tolerance_used = eps;
  if (m.rows() == 0) {
    verdict.status = PsdStatus::kPositiveSemidefinite;
    return verdict;
  }
  const HermitianEigen eig = HermitianEig(m, std::max(eps, DefaultTolerance(m)));
  verdict.min_eigenvalue = eig.values(0);
  verdict.max_eigenvalue = eig.values(eig.values.size() - 1);
  if (verdict.min_eigenvalue > eps) {
    verdict.status = PsdStatus::kPositiveDefinite;
  } else if (verdict.min_eigenvalue >= -eps) {
    verdict.status = PsdStatus::kPositiveSemidefinite;
  } else if (verdict.max_eigenvalue < -eps) {
    verdict.status = PsdStatus::kNegativeDefinite;
  } else if (verdict.max_eigenvalue <= eps) {
    verdict.status = PsdStatus::kNegativeSemidefinite;
  } else {
    verdict.status = PsdStatus::kIndefinite;
  }
  return verdict;
}

ComplexMatrix SchurComplement(const ComplexMatrix& m, int split) {
  RequireSquare(m, "SchurComplement");
  const int n = static_cast<int>(m.rows());
  if (split < 0 || split > n) {
    throw std::invalid_argument("SchurComplement: split out of range");
  }
  RequireHermitian(m, DefaultTolerance(m), "SchurComplement");
  const int rest = n - split;
  if (rest == 0) return m;
  const ComplexMatrix s = m.bottomRightCorner(rest, rest);
  const ComplexMatrix r = m.topRightCorner(split, rest);
  if (NumericalRank(s) < rest) {
    throw SingularMatrixError("SchurComplement: lower-right block is singular");
  }
  const ComplexMatrix out =
      m.topLeftCorner(split, split) - r * Solve(s, r.adjoint());
  return HermitianPart(out);
}

Eigen::VectorXd SingularValues(const ComplexMatrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

int NumericalRank(const ComplexMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const Eigen::VectorXd sigma = SingularValues(m);
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  const double threshold =
      rel_tol * sigma(0) * static_cast<double>(std::max(m.rows(), m.cols()));
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) ++rank;
  }
  return rank;
}

ComplexMatrix NullSpace(const ComplexMatrix& m, double rel_tol) {
  const int cols = static_cast<int>(m.cols());
  if (m.rows() == 0) return ComplexMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const int rank = NumericalRank(m, rel_tol);
  return svd.matrixV().rightCols(cols - rank);
}

ComplexMatrix RangeBasis(const ComplexMatrix& m, double rel_tol) {
  const int rows = static_cast<int>(m.rows());
  if (m.cols() == 0) return ComplexMatrix(rows, 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU);
  const int rank = NumericalRank(m, rel_tol);
  return svd.matrixU().leftCols(rank);
}

ComplexMatrix Signature(int nu, int l) {
  if (l < 0 || nu < 0 || nu > l) {
    throw std::invalid_argument("Signature: need 0 <= nu <= l");
  }
  ComplexMatrix e = ComplexMatrix::Identity(l, l);
  for (int i = 0; i < nu; ++i) e(i, i) = -1.0;
  return e;
}

Congruence CongruenceToSignature(const ComplexMatrix& h,
                                 std::optional<double> tol) {
  const double eps = tol.value_or(DefaultTolerance(h));
  const HermitianEigen eig = HermitianEig(h, std::max(eps, DefaultTolerance(h)));
  const int n = static_cast<int>(h.rows());
  Congruence out;
  out.V.resize(n, n);
  for (int k = 0; k < n; ++k) {
    const double lambda = eig.values(k);
    if (std::abs(lambda) <= eps) {
      throw SingularMatrixError("CongruenceToSignature: H is singular");
    }
    if (lambda < 0) ++out.nu;
    out.V.col(k) = eig.vectors.col(k) / std::sqrt(std::abs(lambda));
  }
  return out;
}

ComplexMatrix Solve(const ComplexMatrix& m, const ComplexMatrix& rhs) {
  RequireSquare(m, "Solve");
  if (m.rows() != rhs.rows()) {
    throw std::invalid_argument("Solve: dimension mismatch");
  }
  if (m.rows() == 0) return ComplexMatrix(0, rhs.cols());
  Eigen::FullPivLU<ComplexMatrix> lu(m);
  lu.setThreshold(1e-13);
  if (!lu.isInvertible()) {
    throw SingularMatrixError("Solve: matrix is singular");
  }
  return lu.solve(rhs);
}

ComplexMatrix Inverse(const ComplexMatrix& m) {
  return Solve(m, ComplexMatrix::Identity(m.rows(), m.cols()));
}

double ConditionNumber(const ComplexMatrix& m) {
  const Eigen::VectorXd sigma = SingularValues(m);
  if (sigma.size() == 0) return 1.0;
  const double smallest = sigma(sigma.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return sigma(0) / smallest;
}

bool ApproxEqual(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) {
      if (std::abs(a(i, j) - b(i, j)) > tol) return false;
    }
  }
  return true;
}

ComplexMatrix RealMatrix(
    std::initializer_list<std::initializer_list<double>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  ComplexMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) {
      throw std::invalid_argument("RealMatrix: ragged rows");
    }
    int j = 0;
    for (double x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

}  // namespace gpreal
