#include "gpreal/lmi.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace gpreal::lmi {

namespace {

double RealTraceProduct(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Re tr(a * b)
  return (a.cwiseProduct(b.transpose())).sum().real();
}

struct BarrierEval {
  bool feasible = false;
  double value = 0.0;  // barrier only, without the mu * (-t) term
};

struct Workspace {
  const Problem& problem;
  int dim;  // num_vars + 1 (t)
  int degree;

  explicit Workspace(const Problem& p) : problem(p), dim(p.num_vars + 1), degree(1) {
    for (const auto& b : p.objective) degree += static_cast<int>(b.base.rows());
    for (const auto& b : p.fixed) degree += static_cast<int>(b.base.rows());
  }

  ComplexMatrix Slack(const AffineBlock& block, const Eigen::VectorXd& x, double t) const {
    ComplexMatrix s = block.At(x);
    s.diagonal().array() -= t;
    return HermitianPart(s);
  }

  BarrierEval Evaluate(const Eigen::VectorXd& z) const {
    BarrierEval out;
    const Eigen::VectorXd x = z.head(problem.num_vars);
    const double t = z(problem.num_vars);
    const double ball = problem.radius * problem.radius - x.squaredNorm();
    if (!(ball > 0.0)) return out;
    double value = -std::log(ball);
    auto add_block = [&](const ComplexMatrix& s) {
      if (s.rows() == 0) return true;
      Eigen::LLT<ComplexMatrix> llt(s);
      if (llt.info() != Eigen::Success) return false;
      const auto diag = llt.matrixLLT().diagonal();
      for (int i = 0; i < diag.size(); ++i) {
        const double d = diag(i).real();
        if (!(d > 0.0)) return false;
        value -= 2.0 * std::log(d);
      }
      return true;
    };
    for (const auto& b : problem.objective) {
      if (!add_block(Slack(b, x, t))) return out;
    }
    for (const auto& b : problem.fixed) {
      if (!add_block(Slack(b, x, 0.0))) return out;
    }
    out.feasible = std::isfinite(value);
    out.value = value;
    return out;
  }

  // Gradient and Hessian of the barrier at z.
  void Derivatives(const Eigen::VectorXd& z, Eigen::VectorXd& grad,
                   Eigen::MatrixXd& hess) const {
    const int k = problem.num_vars;
    grad = Eigen::VectorXd::Zero(dim);
    hess = Eigen::MatrixXd::Zero(dim, dim);
    const Eigen::VectorXd x = z.head(k);
    const double t = z(k);

    auto accumulate = [&](const AffineBlock& block, const ComplexMatrix& s, bool with_t) {
      const int r = static_cast<int>(s.rows());
      if (r == 0) return;
      Eigen::LLT<ComplexMatrix> llt(s);
      const ComplexMatrix s_inv = llt.solve(ComplexMatrix::Identity(r, r));
      std::vector<ComplexMatrix> sd(dim);
      for (int i = 0; i < k; ++i) sd[i] = s_inv * block.terms[i];
      if (with_t) sd[k] = -s_inv;
      for (int i = 0; i < dim; ++i) {
        if (sd[i].size() == 0) continue;
        grad(i) -= sd[i].trace().real();
        for (int j = i; j < dim; ++j) {
          if (sd[j].size() == 0) continue;
          const double h = RealTraceProduct(sd[i], sd[j]);
          hess(i, j) += h;
          if (j != i) hess(j, i) += h;
        }
      }
    };
    for (const auto& b : problem.objective) accumulate(b, Slack(b, x, t), true);
    for (const auto& b : problem.fixed) accumulate(b, Slack(b, x, 0.0), false);

    const double ball = problem.radius * problem.radius - x.squaredNorm();
    grad.head(k) += 2.0 * x / ball;
    hess.topLeftCorner(k, k) +=
        (2.0 / ball) * Eigen::MatrixXd::Identity(k, k) + (4.0 / (ball * ball)) * x * x.transpose();
  }
};

}  // namespace

ComplexMatrix AffineBlock::At(const Eigen::VectorXd& x) const {
  ComplexMatrix out = base;
  for (size_t k = 0; k < terms.size(); ++k) {
    if (x(k) != 0.0) out += x(k) * terms[k];
  }
  return out;
}

double MinObjectiveEigenvalue(const Problem& problem, const Eigen::VectorXd& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : problem.objective) {
    if (b.base.rows() == 0) continue;
    const HermitianEigen eig = HermitianEig(HermitianPart(b.At(x)));
    best = std::min(best, eig.values(0));
  }
  return best;
}

bool FixedBlocksFeasible(const Problem& problem, const Eigen::VectorXd& x) {
  for (const auto& b : problem.fixed) {
    if (b.base.rows() == 0) continue;
    Eigen::LLT<ComplexMatrix> llt(HermitianPart(b.At(x)));
    if (llt.info() != Eigen::Success) return false;
  }
  return true;
}

Result MaximizeMinEigenvalue(const Problem& problem, const Eigen::VectorXd& x0,
                             const Options& options) {
  if (x0.size() != problem.num_vars) {
    throw std::invalid_argument("MaximizeMinEigenvalue: x0 has wrong size");
  }
  if (problem.objective.empty()) {
    throw std::invalid_argument("MaximizeMinEigenvalue: no objective block");
  }
  Workspace ws(problem);
  const int k = problem.num_vars;

  Eigen::VectorXd z(ws.dim);
  z.head(k) = x0;
  if (x0.norm() >= problem.radius) z.head(k) *= 0.5 * problem.radius / x0.norm();
  z(k) = MinObjectiveEigenvalue(problem, z.head(k)) - 1.0;

  Result result;
  if (!ws.Evaluate(z).feasible) {
    throw std::invalid_argument("MaximizeMinEigenvalue: starting point is not strictly feasible");
  }

  double mu = 1.0;
  int steps = 0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  while (true) {
    // Centering.
    for (int inner = 0; inner < 200 && steps < options.max_newton_steps; ++inner, ++steps) {
      ws.Derivatives(z, grad, hess);
      grad(k) -= mu;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
      Eigen::VectorXd step = ldlt.solve(-grad);
      if (ldlt.info() != Eigen::Success || !step.allFinite()) {
        const double shift = 1e-12 * std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
        step = (hess + shift * Eigen::MatrixXd::Identity(ws.dim, ws.dim)).ldlt().solve(-grad);
      }
      const double decrement = -grad.dot(step);
      if (!(decrement > 1e-10)) break;
      const double f0 = ws.Evaluate(z).value - mu * z(k);
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        const Eigen::VectorXd trial = z + alpha * step;
        const BarrierEval eval = ws.Evaluate(trial);
        if (eval.feasible && eval.value - mu * trial(k) <= f0 - 0.25 * alpha * decrement) {
          z = trial;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    const double t = z(k);
    const double gap = ws.degree / mu;
    result.t_upper = t + gap;
    if (t > options.stop_above || result.t_upper < -options.stop_below ||
        gap <= options.gap || steps >= options.max_newton_steps) {
      break;
    }
    mu *= 8.0;
  }
  result.x = z.head(k);
  result.t = MinObjectiveEigenvalue(problem, result.x);
  result.newton_steps = steps;
  return result;
}

Eigen::VectorXd PolishKernel(const Problem& problem, Eigen::VectorXd x, int max_iterations) {
  Eigen::VectorXd best = x;
  double best_value = MinObjectiveEigenvalue(problem, x);
  for (int iter = 0; iter < max_iterations; ++iter) {
    std::vector<ComplexMatrix> maps(problem.num_vars);
    std::vector<ComplexMatrix> rhs_parts;
    std::vector<std::vector<ComplexMatrix>> map_parts(problem.num_vars);
    int total_rows = 0;
    for (const auto& b : problem.objective) {
      const ComplexMatrix f = HermitianPart(b.At(x));
      if (f.rows() == 0) continue;
      const HermitianEigen eig = HermitianEig(f);
      const double delta = 1e-6 * std::max(1.0, InfNorm(f));
      int null_count = 0;
      while (null_count < eig.values.size() && eig.values(null_count) <= delta) ++null_count;
      if (null_count == 0) continue;
      const ComplexMatrix u = eig.vectors.leftCols(null_count);
      const ComplexMatrix r = -(f * u);
      rhs_parts.push_back(Eigen::Map<const ComplexVector>(r.data(), r.size()));
      for (int v = 0; v < problem.num_vars; ++v) {
        const ComplexMatrix m = b.terms[v] * u;
        map_parts[v].push_back(Eigen::Map<const ComplexVector>(m.data(), m.size()));
      }
      total_rows += static_cast<int>(r.size());
    }
    if (total_rows == 0) break;
    ComplexMatrix rhs(total_rows, 1);
    {
      int offset = 0;
      for (const auto& part : rhs_parts) {
        rhs.block(offset, 0, part.rows(), 1) = part;
        offset += static_cast<int>(part.rows());
      }
    }
    for (int v = 0; v < problem.num_vars; ++v) {
      maps[v].resize(total_rows, 1);
      int offset = 0;
      for (const auto& part : map_parts[v]) {
        maps[v].block(offset, 0, part.rows(), 1) = part;
        offset += static_cast<int>(part.rows());
      }
    }
    const Eigen::VectorXd dx = SolveRealLeastSquares(maps, rhs);
    if (dx.norm() == 0.0) break;
    const Eigen::VectorXd trial = x + dx;
    if (!FixedBlocksFeasible(problem, trial)) break;
    const double value = MinObjectiveEigenvalue(problem, trial);
    x = trial;
    if (value > best_value) {
      best_value = value;
      best = trial;
    }
    if (dx.norm() <= 1e-15 * std::max(1.0, x.norm())) break;
  }
  return best;
}

std::vector<ComplexMatrix> HermitianBasis(int n, bool real_only) {
  std::vector<ComplexMatrix> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = r;
      e(j, i) = r;
      basis.push_back(e);
    }
  }
  if (!real_only) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(n, n);
        e(i, j) = Complex(0.0, r);
        e(j, i) = Complex(0.0, -r);
        basis.push_back(e);
      }
    }
  }
  return basis;
}

ComplexMatrix Compose(const std::vector<ComplexMatrix>& basis, const Eigen::VectorXd& coords) {
  if (basis.empty()) return ComplexMatrix();
  ComplexMatrix out = ComplexMatrix::Zero(basis[0].rows(), basis[0].cols());
  for (size_t k = 0; k < basis.size(); ++k) out += coords(k) * basis[k];
  return out;
}

Eigen::VectorXd Decompose(const std::vector<ComplexMatrix>& basis, const ComplexMatrix& h) {
  Eigen::VectorXd coords(basis.size());
  for (size_t k = 0; k < basis.size(); ++k) {
    coords(k) = (basis[k].adjoint() * h).trace().real();
  }
  return coords;
}

namespace {

Eigen::MatrixXd RealSystem(const std::vector<ComplexMatrix>& maps) {
  if (maps.empty()) return Eigen::MatrixXd();
  const int entries = static_cast<int>(maps[0].size());
  Eigen::MatrixXd m(2 * entries, maps.size());
  for (size_t k = 0; k < maps.size(); ++k) {
    const ComplexMatrix& a = maps[k];
    for (int e = 0; e < entries; ++e) {
      m(2 * e, k) = a.data()[e].real();
      m(2 * e + 1, k) = a.data()[e].imag();
    }
  }
  return m;
}

}  // namespace

Eigen::VectorXd SolveRealLeastSquares(const std::vector<ComplexMatrix>& maps,
                                      const ComplexMatrix& rhs, double* residual) {
  if (maps.empty()) {
    if (residual) *residual = rhs.norm();
    return Eigen::VectorXd();
  }
  const Eigen::MatrixXd m = RealSystem(maps);
  Eigen::VectorXd b(2 * rhs.size());
  for (int e = 0; e < rhs.size(); ++e) {
    b(2 * e) = rhs.data()[e].real();
    b(2 * e + 1) = rhs.data()[e].imag();
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
  cod.setThreshold(1e-12);
  const Eigen::VectorXd x = cod.solve(b);
  if (residual) *residual = (m * x - b).norm();
  return x;
}

Eigen::MatrixXd RealNullSpace(const std::vector<ComplexMatrix>& maps, double rel_tol) {
  const int k = static_cast<int>(maps.size());
  if (k == 0) return Eigen::MatrixXd(0, 0);
  const Eigen::MatrixXd m = RealSystem(maps);
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(k, k);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd sigma = svd.singularValues();
  int rank = 0;
  const double threshold = sigma.size() == 0 ? 0.0 : rel_tol * std::max(1.0, sigma(0)) * std::max(m.rows(), m.cols());
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) ++rank;
  }
  return svd.matrixV().rightCols(k - rank);
}

}  // namespace gpreal::lmi
