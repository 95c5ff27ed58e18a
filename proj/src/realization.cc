#include "gpreal/realization.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace gpreal {

namespace {

// Gaussian integer with overflow-checked arithmetic for the exact
// characteristic-polynomial path.
struct GaussInt {
  int64_t re = 0;
  int64_t im = 0;
};

struct OverflowError {};

int64_t CheckedAdd(int64_t a, int64_t b) {
  int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError{};
  return out;
}

int64_t CheckedMul(int64_t a, int64_t b) {
  int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError{};
  return out;
}

GaussInt Add(GaussInt a, GaussInt b) {
  return {CheckedAdd(a.re, b.re), CheckedAdd(a.im, b.im)};
}

GaussInt Mul(GaussInt a, GaussInt b) {
  return {CheckedAdd(CheckedMul(a.re, b.re), -CheckedMul(a.im, b.im)),
          CheckedAdd(CheckedMul(a.re, b.im), CheckedMul(a.im, b.re))};
}

using IntMatrix = std::vector<std::vector<GaussInt>>;

IntMatrix IntZeros(int rows, int cols) {
  return IntMatrix(rows, std::vector<GaussInt>(cols));
}

IntMatrix IntMul(const IntMatrix& a, const IntMatrix& b) {
  const int rows = static_cast<int>(a.size());
  const int inner = static_cast<int>(b.size());
  const int cols = inner == 0 ? 0 : static_cast<int>(b[0].size());
  IntMatrix out = IntZeros(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      GaussInt acc;
      for (int k = 0; k < inner; ++k) acc = Add(acc, Mul(a[i][k], b[k][j]));
      out[i][j] = acc;
    }
  }
  return out;
}

constexpr double kExactEntryLimit = 1e6;

std::optional<IntMatrix> ToIntMatrix(const ComplexMatrix& m) {
  IntMatrix out = IntZeros(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      const double re = m(i, j).real();
      const double im = m(i, j).imag();
      if (std::abs(re) > kExactEntryLimit || std::abs(im) > kExactEntryLimit ||
          re != std::round(re) || im != std::round(im)) {
        return std::nullopt;
      }
      out[i][j] = {static_cast<int64_t>(re), static_cast<int64_t>(im)};
    }
  }
  return out;
}

std::optional<ScalarRational> ExactScalarRational(const Realization& re) {
  const auto a = ToIntMatrix(re.A);
  const auto b = ToIntMatrix(re.B);
  const auto c = ToIntMatrix(re.C);
  const auto d = ToIntMatrix(re.D);
  if (!a || !b || !c || !d) return std::nullopt;
  const int n = re.states();
  try {
    std::vector<GaussInt> charpoly(n + 1);
    charpoly[n] = {1, 0};
    std::vector<GaussInt> adj_terms(n);  // C M_k B for k = 1..n
    IntMatrix m_prev = IntZeros(n, n);
    for (int k = 1; k <= n; ++k) {
      IntMatrix m_k = IntMul(*a, m_prev);
      for (int i = 0; i < n; ++i) m_k[i][i] = Add(m_k[i][i], charpoly[n - k + 1]);
      const IntMatrix am = IntMul(*a, m_k);
      GaussInt trace;
      for (int i = 0; i < n; ++i) trace = Add(trace, am[i][i]);
      if (trace.re % k != 0 || trace.im % k != 0) return std::nullopt;
      charpoly[n - k] = {-trace.re / k, -trace.im / k};
      adj_terms[k - 1] = IntMul(IntMul(*c, m_k), *b)[0][0];
      m_prev = std::move(m_k);
    }
    std::vector<GaussInt> numer(n + 1);
    const GaussInt d0 = (*d)[0][0];
    for (int j = 0; j <= n; ++j) numer[j] = Mul(d0, charpoly[j]);
    for (int k = 1; k <= n; ++k) numer[n - k] = Add(numer[n - k], adj_terms[k - 1]);

    ScalarRational out;
    out.exact = true;
    for (const auto& g : numer) {
      out.numerator.emplace_back(static_cast<double>(g.re), static_cast<double>(g.im));
    }
    for (const auto& g : charpoly) {
      out.denominator.emplace_back(static_cast<double>(g.re), static_cast<double>(g.im));
    }
    out.numerator = TrimPolynomial(out.numerator);
    return out;
  } catch (const OverflowError&) {
    return std::nullopt;
  }
}

ScalarRational FloatScalarRational(const Realization& re) {
  const int n = re.states();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  Polynomial charpoly(n + 1, 0.0);
  charpoly[n] = 1.0;
  Polynomial numer(n + 1, 0.0);
  ComplexMatrix m_prev = ComplexMatrix::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    const ComplexMatrix m_k = re.A * m_prev + charpoly[n - k + 1] * id;
    charpoly[n - k] = -(re.A * m_k).trace() / static_cast<double>(k);
    numer[n - k] += (re.C * m_k * re.B)(0, 0);
    m_prev = m_k;
  }
  for (int j = 0; j <= n; ++j) numer[j] += re.D(0, 0) * charpoly[j];
  double scale = 0.0;
  for (const Complex& x : numer) scale = std::max(scale, std::abs(x));
  ScalarRational out;
  out.numerator = TrimPolynomial(numer, 1e-13 * scale);
  out.denominator = charpoly;
  return out;
}

ComplexMatrix PowerStack(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int n = static_cast<int>(a.rows());
  const int p = static_cast<int>(b.cols());
  ComplexMatrix out(n, n * p);
  if (n == 0) return out;
  out.leftCols(p) = b;
  for (int i = 1; i < n; ++i) {
    out.middleCols(i * p, p) = a * out.middleCols((i - 1) * p, p);
  }
  return out;
}

}  // namespace

void Realization::Validate() const {
  const auto n = A.rows();
  if (A.cols() != n) throw std::invalid_argument("Realization: A must be square");
  const auto p = D.rows();
  if (D.cols() != p) throw std::invalid_argument("Realization: D must be square");
  if (B.rows() != n || B.cols() != p) {
    throw std::invalid_argument("Realization: B must be n x p");
  }
  if (C.rows() != p || C.cols() != n) {
    throw std::invalid_argument("Realization: C must be p x n");
  }
}

bool Realization::IsReal() const {
  return A.imag().isZero(0.0) && B.imag().isZero(0.0) &&
         C.imag().isZero(0.0) && D.imag().isZero(0.0);
}

void SystemMatrix::Validate() const {
  RequireSquare(L, "SystemMatrix");
  if (p < 1 || p >= size()) {
    throw std::invalid_argument(
        "SystemMatrix: partition p must satisfy 1 <= p < dim(L)");
  }
}

SystemMatrix Assemble(const Realization& re) {
  re.Validate();
  const int n = re.states();
  const int p = re.ports();
  SystemMatrix sys;
  sys.p = p;
  sys.L.resize(n + p, n + p);
  sys.L << re.A, re.B, re.C, re.D;
  sys.Validate();
  return sys;
}

Realization Partition(const SystemMatrix& sys) {
  sys.Validate();
  const int n = sys.states();
  const int p = sys.p;
  Realization re;
  re.A = sys.L.topLeftCorner(n, n);
  re.B = sys.L.topRightCorner(n, p);
  re.C = sys.L.bottomLeftCorner(p, n);
  re.D = sys.L.bottomRightCorner(p, p);
  return re;
}

ComplexMatrix Evaluate(const Realization& re, Complex s, std::optional<double> tol) {
  re.Validate();
  const int n = re.states();
  const double eps = tol.value_or(DefaultTolerance(re.A));
  for (const Complex& lambda : Spectrum(re.A)) {
    if (std::abs(s - lambda) <= eps) {
      throw PoleError("Evaluate: s coincides with an eigenvalue of A");
    }
  }
  if (n == 0) return re.D;
  const ComplexMatrix resolvent_arg =
      s * ComplexMatrix::Identity(n, n) - re.A;
  Eigen::PartialPivLU<ComplexMatrix> lu(resolvent_arg);
  return re.C * lu.solve(re.B) + re.D;
}

Complex EvaluatePolynomial(const Polynomial& poly, Complex s) {
  Complex acc = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Polynomial TrimPolynomial(Polynomial poly, double tol) {
  while (poly.size() > 1 && std::abs(poly.back()) <= tol) poly.pop_back();
  if (poly.empty()) poly.push_back(0.0);
  return poly;
}

std::vector<Complex> PolynomialRoots(const Polynomial& poly) {
  const Polynomial p = TrimPolynomial(poly);
  const int degree = static_cast<int>(p.size()) - 1;
  if (degree <= 0) return {};
  ComplexMatrix companion = ComplexMatrix::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -p[i] / p[degree];
  return Spectrum(companion);
}

Complex ScalarRational::operator()(Complex s) const {
  return EvaluatePolynomial(numerator, s) / EvaluatePolynomial(denominator, s);
}

ScalarRational ScalarRational::Reduced(double tol) const {
  const Polynomial num = TrimPolynomial(numerator);
  const Polynomial den = TrimPolynomial(denominator);
  const bool zero_num = num.size() == 1 && num[0] == Complex(0.0);
  std::vector<Complex> zeros = PolynomialRoots(num);
  std::vector<Complex> poles = PolynomialRoots(den);
  if (zero_num) {
    ScalarRational out;
    out.numerator = {0.0};
    out.denominator = {1.0};
    out.exact = exact;
    return out;
  }
  std::vector<bool> pole_used(poles.size(), false);
  std::vector<Complex> kept_zeros;
  for (const Complex& z : zeros) {
    bool cancelled = false;
    for (size_t j = 0; j < poles.size(); ++j) {
      if (!pole_used[j] &&
          std::abs(z - poles[j]) <= tol * std::max(1.0, std::abs(poles[j]))) {
        pole_used[j] = true;
        cancelled = true;
        break;
      }
    }
    if (!cancelled) kept_zeros.push_back(z);
  }
  auto from_roots = [](const std::vector<Complex>& roots, Complex lead) {
    Polynomial poly{lead};
    for (const Complex& r : roots) {
      Polynomial next(poly.size() + 1, 0.0);
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] += poly[i];
        next[i] -= r * poly[i];
      }
      poly = next;
    }
    return poly;
  };
  std::vector<Complex> kept_poles;
  for (size_t j = 0; j < poles.size(); ++j) {
    if (!pole_used[j]) kept_poles.push_back(poles[j]);
  }
  ScalarRational out;
  out.numerator = from_roots(kept_zeros, num.back() / den.back());
  out.denominator = from_roots(kept_poles, 1.0);
  // Snap rounding noise so integer-valued results print cleanly.
  for (auto* poly : {&out.numerator, &out.denominator}) {
    for (Complex& c : *poly) {
      const double re = std::round(c.real());
      const double im = std::round(c.imag());
      c = Complex(std::abs(c.real() - re) <= 1e-9 ? re : c.real(),
                  std::abs(c.imag() - im) <= 1e-9 ? im : c.imag());
    }
  }
  out.exact = false;
  return out;
}

ScalarRational ToScalarRational(const Realization& re) {
  re.Validate();
  if (re.ports() != 1) {
    throw std::invalid_argument(
        "ToScalarRational: requires p = 1; evaluate pointwise instead");
  }
  if (auto exact = ExactScalarRational(re)) return *exact;
  return FloatScalarRational(re);
}

ComplexMatrix Ctrb(const ComplexMatrix& a, const ComplexMatrix& b) {
  RequireSquare(a, "Ctrb");
  if (b.rows() != a.rows()) throw std::invalid_argument("Ctrb: B must have n rows");
  return PowerStack(a, b);
}

ComplexMatrix Obsv(const ComplexMatrix& a, const ComplexMatrix& c) {
  RequireSquare(a, "Obsv");
  if (c.cols() != a.cols()) throw std::invalid_argument("Obsv: C must have n columns");
  return Ctrb(a.adjoint(), c.adjoint()).adjoint();
}

int McMillanDegree(const Realization& re, double rel_tol) {
  re.Validate();
  if (re.states() == 0) return 0;
  const ComplexMatrix hankel = Obsv(re.A, re.C) * Ctrb(re.A, re.B);
  return NumericalRank(hankel, rel_tol);
}

bool IsMinimal(const Realization& re, double rel_tol) {
  return McMillanDegree(re, rel_tol) == re.states();
}

Realization CoordinateTransform(const Realization& re, const ComplexMatrix& vhat) {
  re.Validate();
  if (vhat.rows() != re.states() || vhat.cols() != re.states()) {
    throw std::invalid_argument("CoordinateTransform: Vhat must be n x n");
  }
  if (NumericalRank(vhat, 1e-12) < re.states()) {
    throw SingularMatrixError("CoordinateTransform: Vhat is singular");
  }
  Realization out;
  out.A = Solve(vhat, re.A * vhat);
  out.B = Solve(vhat, re.B);
  out.C = re.C * vhat;
  out.D = re.D;
  return out;
}

SystemMatrix ConvexCombine(const SystemMatrix& l1, const SystemMatrix& l2, double t) {
  l1.Validate();
  l2.Validate();
  if (l1.size() != l2.size() || l1.p != l2.p) {
    throw std::invalid_argument("ConvexCombine: dimension or partition mismatch");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("ConvexCombine: t must lie in [0, 1]");
  }
  SystemMatrix out;
  out.p = l1.p;
  out.L = (1.0 - t) * l1.L + t * l2.L;
  return out;
}

int UnobservableDim(const ComplexMatrix& a, const ComplexMatrix& qhat, double rel_tol) {
  RequireSquare(a, "UnobservableDim");
  if (qhat.rows() != a.rows() || qhat.cols() != a.cols()) {
    throw std::invalid_argument("UnobservableDim: A and Qhat must match");
  }
  return static_cast<int>(a.rows()) - NumericalRank(Obsv(a, qhat), rel_tol);
}

Realization MinimalRealization(const Realization& re, double rel_tol) {
  re.Validate();
  const ComplexMatrix uc = RangeBasis(Ctrb(re.A, re.B), rel_tol);
  Realization ctrl;
  ctrl.A = uc.adjoint() * re.A * uc;
  ctrl.B = uc.adjoint() * re.B;
  ctrl.C = re.C * uc;
  ctrl.D = re.D;
  if (ctrl.states() == 0) return ctrl;
  const ComplexMatrix uo = RangeBasis(Obsv(ctrl.A, ctrl.C).adjoint(), rel_tol);
  Realization out;
  out.A = uo.adjoint() * ctrl.A * uo;
  out.B = uo.adjoint() * ctrl.B;
  out.C = ctrl.C * uo;
  out.D = ctrl.D;
  return out;
}

std::vector<Complex> Poles(const Realization& re, double rel_tol) {
  return Spectrum(MinimalRealization(re, rel_tol).A);
}

}  // namespace gpreal
