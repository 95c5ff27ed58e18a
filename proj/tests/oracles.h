#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gpreal/linalg.h"

// Independent reference computations and random generators for the tests.
namespace gpreal::testing {

using Poly = std::vector<double>;  // ascending degree

inline Poly PolyAdd(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

inline Poly PolyMul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Poly PolyScale(const Poly& a, double c) {
  Poly out = a;
  for (double& x : out) x *= c;
  return out;
}

inline Poly PolyTrim(Poly a) {
  while (a.size() > 1 && a.back() == 0.0) a.pop_back();
  if (a.empty()) a.push_back(0.0);
  return a;
}

// Determinant of a matrix of polynomials by Laplace expansion along the
// first row.
inline Poly PolyDet(const std::vector<std::vector<Poly>>& m) {
  const size_t n = m.size();
  if (n == 0) return {1.0};
  if (n == 1) return m[0][0];
  Poly total = {0.0};
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Poly>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    const Poly term = PolyMul(m[0][j], PolyDet(minor));
    total = PolyAdd(total, PolyScale(term, (j % 2 == 0) ? 1.0 : -1.0));
  }
  return total;
}

// Real single-port system: numerator det([[sI - A, B], [-C, D]]) and
// denominator det(sI - A), both by cofactor expansion.
struct CofactorRational {
  Poly numerator;
  Poly denominator;
};

inline CofactorRational CofactorTransferFunction(const Eigen::MatrixXd& l) {
  const int size = static_cast<int>(l.rows());
  const int n = size - 1;
  std::vector<std::vector<Poly>> full(size, std::vector<Poly>(size));
  std::vector<std::vector<Poly>> state(n, std::vector<Poly>(n));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      Poly entry;
      if (i < n && j < n) {
        entry = {-l(i, j), i == j ? 1.0 : 0.0};
        state[i][j] = entry;
      } else if (i < n) {
        entry = {l(i, j)};
      } else if (j < n) {
        entry = {-l(i, j)};
      } else {
        entry = {l(i, j)};
      }
      full[i][j] = entry;
    }
  }
  return {PolyTrim(PolyDet(full)), PolyTrim(PolyDet(state))};
}

inline ComplexMatrix RandomComplex(int rows, int cols, std::mt19937_64& rng, bool real = false) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i)
      m(i, j) = real ? Complex(normal(rng), 0.0) : Complex(normal(rng), normal(rng));
  return m;
}

inline ComplexMatrix RandomHermitian(int n, std::mt19937_64& rng, bool real = false) {
  const ComplexMatrix g = RandomComplex(n, n, rng, real);
  return (g + g.adjoint()) / 2.0;
}

inline ComplexMatrix RandomSkew(int n, std::mt19937_64& rng) {
  const ComplexMatrix g = RandomComplex(n, n, rng);
  return (g - g.adjoint()) / 2.0;
}

inline ComplexMatrix RandomUnitary(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(RandomComplex(n, n, rng));
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

// Hermitian with prescribed eigenvalues in a random unitary frame.
inline ComplexMatrix HermitianWithSpectrum(const Eigen::VectorXd& values, std::mt19937_64& rng) {
  const ComplexMatrix u = RandomUnitary(static_cast<int>(values.size()), rng);
  return u * values.cast<Complex>().asDiagonal() * u.adjoint();
}

// lambda_min of a Hermitian matrix via Eigen's self-adjoint solver.
inline double OracleMinEig(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace gpreal::testing
