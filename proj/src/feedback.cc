#include "gpreal/feedback.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "gpreal/lmi.h"

namespace gpreal {

void FeedbackProblem::Validate() const {
  OpenLoop().Validate();
}

Realization FeedbackProblem::OpenLoop() const {
  const int p = static_cast<int>(B.cols());
  return Realization{A, B, C, ComplexMatrix::Zero(p, p)};
}

FeedbackProblem FromSystemMatrix(const SystemMatrix& sys) {
  const Realization re = Partition(sys);
  if (re.D.size() > 0 && re.D.cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("feedback requires D = 0");
  }
  return FeedbackProblem{re.A, re.B, re.C};
}

std::string ToString(FeedbackHStatus status) {
  switch (status) {
    case FeedbackHStatus::found: return "found";
    case FeedbackHStatus::infeasible_cond_a: return "infeasible_cond_a";
    case FeedbackHStatus::infeasible_cond_b: return "infeasible_cond_b";
  }
  return "unknown";
}

namespace {

ComplexMatrix InverseHermitian(const ComplexMatrix& hhat) {
  const HermitianEigen eig = HermitianEig(hhat);
  const double scale = eig.values.size() == 0 ? 0.0 : eig.values.cwiseAbs().maxCoeff();
  for (int i = 0; i < eig.values.size(); ++i) {
    if (std::abs(eig.values(i)) <= 1e-12 * std::max(1.0, scale)) {
      throw SingularMatrixError("Hhat is singular");
    }
  }
  return HermitianPart(Inverse(hhat));
}

double ConditionBValue(const FeedbackProblem& fp, const ComplexMatrix& g,
                       const ComplexMatrix& null_b) {
  if (null_b.cols() == 0) return std::numeric_limits<double>::infinity();
  const ComplexMatrix w = null_b.adjoint() * (fp.A * g + g * fp.A.adjoint()) * null_b;
  return HermitianEig(HermitianPart(w)).values(0);
}

}  // namespace

FeedbackConditions CheckConditions(const FeedbackProblem& fp, const ComplexMatrix& hhat,
                                   double tol) {
  fp.Validate();
  if (hhat.rows() != fp.A.rows() || hhat.cols() != fp.A.cols()) {
    throw std::invalid_argument("CheckConditions: Hhat has wrong size");
  }
  const ComplexMatrix g = InverseHermitian(HermitianPart(hhat));
  FeedbackConditions out;
  const double c_norm = fp.C.size() == 0 ? 0.0 : SingularValues(fp.C)(0);
  const ComplexMatrix r = fp.C + fp.B.adjoint() * hhat;
  out.residual_a = r.size() == 0 ? 0.0 : SingularValues(r)(0);
  out.cond_a = out.residual_a <= tol * (1.0 + c_norm);
  out.min_eigenvalue_b = ConditionBValue(fp, g, NullSpace(fp.B.adjoint()));
  out.cond_b = out.min_eigenvalue_b >= -tol;
  return out;
}

FeedbackHResult FindFeedbackH(const FeedbackProblem& fp, const FeedbackHOptions& options) {
  fp.Validate();
  const int n = static_cast<int>(fp.A.rows());
  FeedbackHResult out;

  auto accept = [&](ComplexMatrix hhat) {
    FeedbackConditions cond;
    try {
      cond = CheckConditions(fp, hhat, options.tol);
    } catch (const SingularMatrixError&) {
      return false;
    }
    if (cond.cond_a && cond.min_eigenvalue_b > out.best_min_eigenvalue) {
      out.best_min_eigenvalue = cond.min_eigenvalue_b;
      out.Hhat = hhat;
    }
    if (!cond.cond_a || !cond.cond_b) return false;
    out.status = FeedbackHStatus::found;
    out.Hhat = hhat;
    out.residual_a = cond.residual_a;
    return true;
  };

  for (int nu = 0; nu <= n; ++nu) {
    if (accept(Signature(nu, n))) return out;
  }

  // C G = -B* over Hermitian G
  const bool real_only = fp.OpenLoop().IsReal();
  const auto basis = lmi::HermitianBasis(n, real_only);
  std::vector<ComplexMatrix> maps;
  for (const auto& b : basis) maps.push_back(fp.C * b);
  double residual = 0.0;
  const ComplexMatrix target = -fp.B.adjoint();
  const Eigen::VectorXd x_p = lmi::SolveRealLeastSquares(maps, target, &residual);
  const double scale_a = 1.0 + (target.size() == 0 ? 0.0 : target.cwiseAbs().maxCoeff());
  if (residual > 1e-9 * scale_a) {
    out.status = FeedbackHStatus::infeasible_cond_a;
    out.residual_a = residual;
    return out;
  }
  const Eigen::MatrixXd z = lmi::RealNullSpace(maps);
  const int k = static_cast<int>(z.cols());
  const ComplexMatrix g_p = lmi::Compose(basis, x_p);
  std::vector<ComplexMatrix> g_terms;
  for (int j = 0; j < k; ++j) g_terms.push_back(lmi::Compose(basis, z.col(j)));
  const ComplexMatrix null_b = NullSpace(fp.B.adjoint());

  auto project_h = [&](const ComplexMatrix& g) {
    // Hhat = G^{-1}, then the minimum-norm correction onto B* Hhat = -C
    ComplexMatrix hhat = HermitianPart(Inverse(g));
    std::vector<ComplexMatrix> h_maps;
    for (const auto& b : basis) h_maps.push_back(fp.B.adjoint() * b);
    const ComplexMatrix rhs = -fp.C - fp.B.adjoint() * hhat;
    const Eigen::VectorXd dx = lmi::SolveRealLeastSquares(h_maps, rhs);
    return HermitianPart(hhat + lmi::Compose(basis, dx));
  };

  if (k == 0) {
    try {
      accept(project_h(g_p));
    } catch (const SingularMatrixError&) {
    }
    return out;
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int nu = 0; nu <= n; ++nu) {
    for (int restart = 0; restart <= options.random_restarts; ++restart) {
      ComplexMatrix frame = ComplexMatrix::Identity(n, n);
      if (restart > 0) {
        ComplexMatrix gauss(n, n);
        for (int j = 0; j < n; ++j) {
          for (int i = 0; i < n; ++i) {
            gauss(i, j) = real_only ? Complex(normal(rng), 0.0) : Complex(normal(rng), normal(rng));
          }
        }
        Eigen::HouseholderQR<ComplexMatrix> qr(gauss);
        frame = qr.householderQ() * ComplexMatrix::Identity(n, n);
      }
      const ComplexMatrix neg = frame.leftCols(nu);
      const ComplexMatrix pos = frame.rightCols(n - nu);
      for (double radius : options.radii) {
        const double c = 0.5 * radius / std::sqrt(static_cast<double>(n));
        const double tau = 1e-3 * c;
        lmi::Problem problem;
        problem.num_vars = k;
        if (null_b.cols() > 0) {
          lmi::AffineBlock w;
          auto lyap = [&](const ComplexMatrix& g) {
            return null_b.adjoint() * (fp.A * g + g * fp.A.adjoint()) * null_b;
          };
          w.base = lyap(g_p);
          for (const auto& t : g_terms) w.terms.push_back(lyap(t));
          problem.objective.push_back(w);
        }
        if (nu > 0) {
          lmi::AffineBlock b;
          b.base = -(neg.adjoint() * g_p * neg) - tau * ComplexMatrix::Identity(nu, nu);
          for (const auto& t : g_terms) b.terms.push_back(-(neg.adjoint() * t * neg));
          problem.objective.push_back(b);
        }
        if (n - nu > 0) {
          lmi::AffineBlock b;
          b.base = pos.adjoint() * g_p * pos - tau * ComplexMatrix::Identity(n - nu, n - nu);
          for (const auto& t : g_terms) b.terms.push_back(pos.adjoint() * t * pos);
          problem.objective.push_back(b);
        }
        const ComplexMatrix g_seed = c * frame * Signature(nu, n) * frame.adjoint();
        const Eigen::VectorXd y0 = z.transpose() * (lmi::Decompose(basis, g_seed) - x_p);
        problem.radius = std::max(radius, 2.0 * y0.norm() + 1.0);
        lmi::Options opts;
        opts.stop_above = 10.0 * options.tol;
        opts.stop_below = 10.0 * options.tol;
        opts.gap = 1e-12;
        const lmi::Result res = lmi::MaximizeMinEigenvalue(problem, y0, opts);
        Eigen::VectorXd y = res.x;
        if (res.t < 10.0 * options.tol && res.t_upper >= -10.0 * options.tol) {
          y = lmi::PolishKernel(problem, y);
        }
        ComplexMatrix g = g_p;
        for (int j = 0; j < k; ++j) g += y(j) * g_terms[j];
        try {
          if (accept(project_h(HermitianPart(g)))) return out;
        } catch (const SingularMatrixError&) {
        }
      }
    }
  }
  return out;
}

Realization ClosedLoop(const FeedbackProblem& fp, const ComplexMatrix& k) {
  fp.Validate();
  const int p = static_cast<int>(fp.B.cols());
  if (k.rows() != p || k.cols() != p) throw std::invalid_argument("ClosedLoop: K has wrong size");
  return Realization{fp.A + fp.B * k * fp.C, fp.B, fp.C, ComplexMatrix::Zero(p, p)};
}

FeedbackCertificate SynthesizeK(const FeedbackProblem& fp, const ComplexMatrix& hhat,
                                const SynthesisOptions& options) {
  fp.Validate();
  const ComplexMatrix g = InverseHermitian(HermitianPart(hhat));
  const ComplexMatrix base = fp.A * g + g * fp.A.adjoint();
  const ComplexMatrix bb = fp.B * fp.B.adjoint();
  const int p = static_cast<int>(fp.B.cols());

  FeedbackCertificate out;
  out.Hhat = HermitianPart(hhat);
  out.k_max = options.k_max;
  auto min_eig = [&](double kappa) {
    const double value = HermitianEig(HermitianPart(base + 2.0 * kappa * bb)).values(0);
    out.trace.push_back({kappa, value});
    return value;
  };

  double kappa = 0.0;
  if (min_eig(0.0) < -options.tol) {
    if (min_eig(options.k_max) < -options.tol) {
      out.kappa = options.k_max;
      return out;
    }
    double lo = 0.0;
    double hi = options.k_max;
    while (hi - lo > 1e-13 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (min_eig(mid) >= -options.tol) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    kappa = hi;
  }

  std::vector<BisectionStep> sorted = out.trace;
  std::sort(sorted.begin(), sorted.end(),
            [](const BisectionStep& a, const BisectionStep& b) { return a.kappa < b.kappa; });
  for (size_t i = 1; i < sorted.size(); ++i) {
    const double slack = 1e-9 * std::max(1.0, std::abs(sorted[i].min_eigenvalue));
    if (sorted[i].min_eigenvalue < sorted[i - 1].min_eigenvalue - slack) out.monotone = false;
  }

  out.kappa = kappa;
  out.K = -kappa * ComplexMatrix::Identity(p, p);
  out.closed_loop = ClosedLoop(fp, out.K);
  const CertificateCheck check = CheckCertificate(out.closed_loop, out.Hhat);
  out.certificate = check.certificate;
  out.feasible = check.accepted;
  return out;
}

bool InvarianceHolds(const SystemMatrix& sys, const ComplexMatrix& hhat, const ComplexMatrix& k,
                     std::optional<double> tol) {
  const FeedbackProblem fp = FromSystemMatrix(sys);
  const ComplexMatrix kk = HermitianPart(k + k.adjoint());
  if (PsdCheck(kk, tol.value_or(DefaultTolerance(kk))).max_eigenvalue >
      tol.value_or(DefaultTolerance(kk))) {
    throw std::invalid_argument("InvarianceHolds: K + K* is not negative semidefinite");
  }
  return CheckCertificate(ClosedLoop(fp, k), hhat, tol).accepted;
}

}  // namespace gpreal
