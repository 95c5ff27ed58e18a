#include "gpreal/prl.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "gpreal/lmi.h"

namespace gpreal {

namespace {

ComplexMatrix BlockH(const ComplexMatrix& hhat, int p) {
  const int n = static_cast<int>(hhat.rows());
  ComplexMatrix h = ComplexMatrix::Zero(n + p, n + p);
  h.topLeftCorner(n, n) = hhat;
  h.bottomRightCorner(p, p).setIdentity();
  return h;
}

ComplexMatrix RequirePositiveDefiniteDSum(const Realization& re) {
  const ComplexMatrix dd = HermitianPart(re.D + re.D.adjoint());
  const PsdVerdict verdict = PsdCheck(dd);
  if (verdict.status != PsdStatus::kPositiveDefinite) {
    throw std::invalid_argument("D + D* is not positive definite");
  }
  return dd;
}

double SpectralNorm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return SingularValues(m)(0);
}

}  // namespace

ComplexMatrix LyapunovResidual(const Realization& re, const ComplexMatrix& hhat) {
  re.Validate();
  if (hhat.rows() != re.states() || hhat.cols() != re.states()) {
    throw std::invalid_argument("LyapunovResidual: Hhat has wrong size");
  }
  const ComplexMatrix l = Assemble(re).L;
  const ComplexMatrix hl = BlockH(hhat, re.ports()) * l;
  return HermitianPart(hl + hl.adjoint());
}

ComplexMatrix RiccatiM(const Realization& re, const ComplexMatrix& hhat) {
  re.Validate();
  if (hhat.rows() != re.states() || hhat.cols() != re.states()) {
    throw std::invalid_argument("RiccatiM: Hhat has wrong size");
  }
  const ComplexMatrix dd = RequirePositiveDefiniteDSum(re);
  const ComplexMatrix a_hat = re.A - re.B * Solve(dd, re.C);
  const ComplexMatrix r = re.B * Solve(dd, re.B.adjoint());
  const ComplexMatrix s = re.C.adjoint() * Solve(dd, re.C);
  const ComplexMatrix m = hhat * a_hat + a_hat.adjoint() * hhat - hhat * r * hhat - s;
  return HermitianPart(m);
}

bool RiccatiEquivalenceHolds(const Realization& re, const ComplexMatrix& hhat,
                             std::optional<double> tol) {
  const ComplexMatrix q = LyapunovResidual(re, hhat);
  const ComplexMatrix m = RiccatiM(re, hhat);
  const double eps = tol.value_or(DefaultTolerance(q));
  return PsdCheck(q, eps).IsPsd() == PsdCheck(m, eps).IsPsd();
}

CertificateCheck CheckCertificate(const Realization& re, const ComplexMatrix& hhat,
                                  std::optional<double> tol) {
  re.Validate();
  const int n = re.states();
  if (hhat.rows() != n || hhat.cols() != n) {
    throw std::invalid_argument("CheckCertificate: Hhat has wrong size");
  }
  RequireHermitian(hhat, 1e-9 * std::max(1.0, InfNorm(hhat)), "CheckCertificate");
  const HermitianEigen eig = HermitianEig(hhat);
  const double scale = eig.values.size() == 0 ? 0.0 : eig.values.cwiseAbs().maxCoeff();
  const double eps_sing = 1e-6 * scale;
  int nu = 0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(eig.values(i)) <= eps_sing) {
      throw SingularMatrixError("CheckCertificate: Hhat is singular");
    }
    if (eig.values(i) < 0) ++nu;
  }

  CertificateCheck out;
  LyapunovCertificate& cert = out.certificate;
  cert.Hhat = HermitianPart(hhat);
  cert.Q = LyapunovResidual(re, cert.Hhat);
  cert.tolerance_used = tol.value_or(DefaultTolerance(cert.Q));
  const PsdVerdict verdict = PsdCheck(cert.Q, cert.tolerance_used);
  cert.min_eigenvalue = verdict.min_eigenvalue;
  cert.nu = nu;
  cert.pole_bound_neg = nu;
  cert.pole_bound_pos = n - nu;
  cert.positive = nu == n;
  out.accepted = verdict.IsPsd();
  return out;
}

LoewyBounds ComputeLoewyBounds(const ComplexMatrix& a, const ComplexMatrix& hhat,
                               std::optional<double> tol) {
  RequireSquare(a, "ComputeLoewyBounds");
  if (hhat.rows() != a.rows() || hhat.cols() != a.cols()) {
    throw std::invalid_argument("ComputeLoewyBounds: size mismatch");
  }
  const ComplexMatrix qhat = HermitianPart(hhat * a + a.adjoint() * hhat);
  if (!PsdCheck(qhat, tol.value_or(DefaultTolerance(qhat))).IsPsd()) {
    throw std::invalid_argument("ComputeLoewyBounds: Hhat A + A* Hhat is indefinite");
  }
  const Inertia h_inertia = InertiaOf(HermitianPart(hhat));
  if (h_inertia.zero != 0) {
    throw SingularMatrixError("ComputeLoewyBounds: Hhat is singular");
  }
  const int n = static_cast<int>(a.rows());
  LoewyBounds out;
  out.nu = h_inertia.neg;
  // eigenvalues of Qhat at rounding level count as zero
  const double eps = tol.value_or(1e-9 * std::max(1.0, 2.0 * InfNorm(hhat * a)));
  const HermitianEigen q_eig = HermitianEig(qhat);
  Eigen::VectorXd kept = q_eig.values;
  for (int i = 0; i < kept.size(); ++i) {
    if (kept(i) <= eps) kept(i) = 0.0;
  }
  const ComplexMatrix q_clean = q_eig.vectors * kept.cast<Complex>().asDiagonal() * q_eig.vectors.adjoint();
  out.m = UnobservableDim(a, q_clean);
  out.hi_neg = out.nu;
  out.lo_neg = std::max(0, out.nu - out.m);
  out.hi_pos = n - out.nu;
  out.lo_pos = std::max(0, n - out.nu - out.m);
  return out;
}

BoundaryReport BoundaryOracle(const Realization& re, int n_samples, double tol) {
  re.Validate();
  constexpr double kPoleTol = 1e-6;
  BoundaryReport out;
  out.tolerance_used = tol;

  std::vector<double> axis;
  for (const Complex& lambda : Spectrum(re.A)) {
    if (std::abs(lambda.real()) <= 1e-6 * std::max(1.0, std::abs(lambda))) {
      axis.push_back(lambda.imag());
    }
  }
  std::sort(axis.begin(), axis.end());

  std::vector<double> grid = {0.0};
  const int half = std::max(1, n_samples / 2);
  for (int k = 0; k < half; ++k) {
    const double exponent = half == 1 ? -3.0 : -3.0 + 6.0 * k / (half - 1);
    const double w = std::pow(10.0, exponent);
    grid.push_back(w);
    grid.push_back(-w);
  }
  for (size_t k = 1; k < axis.size(); ++k) {
    if (axis[k] - axis[k - 1] > 2 * kPoleTol) grid.push_back(0.5 * (axis[k] + axis[k - 1]));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (double w : grid) {
    const bool near_pole = std::any_of(axis.begin(), axis.end(), [&](double y) {
      return std::abs(w - y) <= kPoleTol;
    });
    if (near_pole) {
      out.profile.excluded.push_back(w);
      continue;
    }
    ComplexMatrix f;
    try {
      f = Evaluate(re, Complex(0.0, w), kPoleTol);
    } catch (const PoleError&) {
      out.profile.excluded.push_back(w);
      continue;
    }
    const double value = HermitianEig(HermitianPart(f + f.adjoint())).values(0);
    out.profile.omegas.push_back(w);
    out.profile.min_eigs.push_back(value);
    if (value < out.min_eigenvalue) {
      out.min_eigenvalue = value;
      out.argmin_omega = w;
    }
  }
  if (out.profile.omegas.empty()) {
    out.vacuous = true;
    out.is_gp = true;
    out.min_eigenvalue = 0.0;
  } else {
    out.is_gp = out.min_eigenvalue >= -tol;
  }
  return out;
}

std::string ToString(AreStatus status) {
  switch (status) {
    case AreStatus::ok: return "ok";
    case AreStatus::no_solution: return "no_solution";
    case AreStatus::ill_separated: return "ill_separated";
  }
  return "unknown";
}

namespace {

// Swaps the adjacent diagonal entries k, k+1 of an upper triangular T,
// updating the unitary factor U so that Z = U T U* still holds.
void SwapSchur(ComplexMatrix& t, ComplexMatrix& u, int k) {
  const Complex a = t(k, k);
  const Complex b = t(k, k + 1);
  const Complex c = t(k + 1, k + 1);
  Eigen::Vector2cd x(b, c - a);
  const double norm = x.norm();
  if (norm == 0.0) return;
  x /= norm;
  Eigen::Matrix2cd g;
  g.col(0) = x;
  g.col(1) = Eigen::Vector2cd(-std::conj(x(1)), std::conj(x(0)));
  t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
  t.middleCols(k, 2) = t.middleCols(k, 2) * g;
  u.middleCols(k, 2) = u.middleCols(k, 2) * g;
  t(k + 1, k) = 0.0;
}

}  // namespace

AreSolution SolveAre(const Realization& re, AreBranch branch) {
  re.Validate();
  const int n = re.states();
  const ComplexMatrix dd = RequirePositiveDefiniteDSum(re);
  const ComplexMatrix a_hat = re.A - re.B * Solve(dd, re.C);
  const ComplexMatrix r = re.B * Solve(dd, re.B.adjoint());
  const ComplexMatrix s = re.C.adjoint() * Solve(dd, re.C);

  ComplexMatrix z(2 * n, 2 * n);
  z << a_hat, -r, s, -a_hat.adjoint();

  AreSolution out;
  Eigen::ComplexSchur<ComplexMatrix> schur(z);
  ComplexMatrix t = schur.matrixT();
  ComplexMatrix u = schur.matrixU();

  const double sep = 1e-8 * std::max(1.0, InfNorm(z));
  auto wanted = [&](Complex lambda) {
    return branch == AreBranch::left ? lambda.real() < 0 : lambda.real() > 0;
  };
  int count = 0;
  for (int i = 0; i < 2 * n; ++i) {
    if (std::abs(t(i, i).real()) <= sep) {
      out.status = AreStatus::ill_separated;
      return out;
    }
    if (wanted(t(i, i))) ++count;
  }
  if (count != n) {
    out.status = AreStatus::ill_separated;
    return out;
  }
  // bubble the wanted eigenvalues to the leading block
  for (int i = 0; i < 2 * n; ++i) {
    for (int k = 2 * n - 2; k >= i; --k) {
      if (wanted(t(k + 1, k + 1)) && !wanted(t(k, k))) SwapSchur(t, u, k);
    }
  }

  const ComplexMatrix u1 = u.topLeftCorner(n, n);
  const ComplexMatrix u2 = u.bottomLeftCorner(n, n);
  ComplexMatrix hhat;
  try {
    hhat = HermitianPart(Solve(u1.adjoint(), u2.adjoint()).adjoint());
  } catch (const SingularMatrixError&) {
    out.status = AreStatus::no_solution;
    return out;
  }
  const double h_norm = SpectralNorm(hhat);
  const Eigen::VectorXd sigma = SingularValues(hhat);
  if (h_norm == 0.0 || sigma(n - 1) <= 1e-10 * h_norm) {
    out.status = AreStatus::no_solution;
    return out;
  }
  out.Hhat = hhat;
  out.residual = InfNorm(RiccatiM(re, hhat));
  out.status = out.residual <= 1e-6 * (1.0 + h_norm * h_norm) ? AreStatus::ok
                                                              : AreStatus::no_solution;
  return out;
}

namespace {

struct SearchContext {
  const Realization& re;
  const CertificateSearchOptions& options;
  CertificateSearch& result;
};

// Accepts hhat when it certifies with the requested inertia; nudges a
// numerically singular hhat along its null directions once.
bool TryAccept(SearchContext& ctx, ComplexMatrix hhat, std::optional<int> target_nu,
               const std::string& method) {
  hhat = HermitianPart(hhat);
  CertificateCheck check;
  try {
    check = CheckCertificate(ctx.re, hhat, ctx.options.tol);
  } catch (const SingularMatrixError&) {
    const HermitianEigen eig = HermitianEig(hhat);
    const double scale = std::max(eig.values.cwiseAbs().maxCoeff(), 1e-12);
    const double eps_sing = 1e-6 * scale;
    for (int i = 0; i < eig.values.size(); ++i) {
      if (std::abs(eig.values(i)) <= eps_sing) {
        const double sign = (target_nu && i < *target_nu) ? -1.0 : 1.0;
        const ComplexVector v = eig.vectors.col(i);
        hhat += (sign * 2.0 * eps_sing - eig.values(i)) * (v * v.adjoint());
      }
    }
    try {
      check = CheckCertificate(ctx.re, hhat, ctx.options.tol);
    } catch (const SingularMatrixError&) {
      return false;
    }
  }
  if (check.certificate.min_eigenvalue > ctx.result.best_min_eigenvalue) {
    ctx.result.best_min_eigenvalue = check.certificate.min_eigenvalue;
    ctx.result.best_hhat = check.certificate.Hhat;
  }
  if (!check.accepted) return false;
  if (target_nu && check.certificate.nu != *target_nu) return false;
  ctx.result.status = SearchStatus::found;
  ctx.result.certificate = check.certificate;
  ctx.result.method = method;
  return true;
}

bool TryRiccati(SearchContext& ctx, std::optional<int> target_nu) {
  const ComplexMatrix dd = HermitianPart(ctx.re.D + ctx.re.D.adjoint());
  const bool definite = PsdCheck(dd).status == PsdStatus::kPositiveDefinite;
  Realization solve_for = ctx.re;
  constexpr double kPerturbation = 1e-6;
  if (!definite) {
    if (!PsdCheck(dd).IsPsd()) return false;
    solve_for.D += kPerturbation * ComplexMatrix::Identity(ctx.re.ports(), ctx.re.ports());
  }
  for (AreBranch branch : {AreBranch::left, AreBranch::right}) {
    AreSolution sol;
    try {
      sol = SolveAre(solve_for, branch);
    } catch (const std::exception&) {
      continue;
    }
    if (sol.status != AreStatus::ok) continue;
    if (TryAccept(ctx, sol.Hhat, target_nu, "riccati")) {
      ctx.result.perturbation_based = !definite;
      ctx.result.perturbation = definite ? 0.0 : kPerturbation;
      return true;
    }
  }
  return false;
}

ComplexMatrix RandomUnitary(int n, bool real_only, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      g(i, j) = real_only ? Complex(normal(rng), 0.0) : Complex(normal(rng), normal(rng));
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

bool TryLmi(SearchContext& ctx, int nu, const ComplexMatrix& frame) {
  const Realization& re = ctx.re;
  const int n = re.states();
  const int p = re.ports();
  const bool real_only = re.IsReal() && frame.imag().isZero(0.0);
  const auto basis = lmi::HermitianBasis(n, real_only);
  const int k = static_cast<int>(basis.size());
  const ComplexMatrix l = Assemble(re).L;

  lmi::AffineBlock q_block;
  {
    ComplexMatrix hp = ComplexMatrix::Zero(n + p, n + p);
    hp.bottomRightCorner(p, p).setIdentity();
    const ComplexMatrix hl = hp * l;
    q_block.base = hl + hl.adjoint();
    for (const auto& b : basis) {
      ComplexMatrix hk = ComplexMatrix::Zero(n + p, n + p);
      hk.topLeftCorner(n, n) = b;
      const ComplexMatrix kl = hk * l;
      q_block.terms.push_back(kl + kl.adjoint());
    }
  }
  const ComplexMatrix neg = frame.leftCols(nu);
  const ComplexMatrix pos = frame.rightCols(n - nu);

  const double scale = std::max(1.0, InfNorm(l));
  const double tol = ctx.options.tol.value_or(1e-9 * scale);

  for (double radius : ctx.options.radii) {
    const double c = 0.5 * radius / std::sqrt(static_cast<double>(n));
    const double tau = 1e-3 * c;
    lmi::Problem problem;
    problem.num_vars = k;
    problem.radius = radius;
    problem.objective.push_back(q_block);
    if (nu > 0) {
      lmi::AffineBlock g;
      g.base = -tau * ComplexMatrix::Identity(nu, nu);
      for (const auto& b : basis) g.terms.push_back(-(neg.adjoint() * b * neg));
      problem.fixed.push_back(g);
    }
    if (n - nu > 0) {
      lmi::AffineBlock g;
      g.base = -tau * ComplexMatrix::Identity(n - nu, n - nu);
      for (const auto& b : basis) g.terms.push_back(pos.adjoint() * b * pos);
      problem.fixed.push_back(g);
    }
    const ComplexMatrix h0 = c * frame * Signature(nu, n) * frame.adjoint();
    const Eigen::VectorXd x0 = lmi::Decompose(basis, h0);

    lmi::Options opts;
    opts.stop_above = 10.0 * tol;
    opts.stop_below = 10.0 * tol;
    opts.gap = 1e-12 * scale;
    lmi::Result res = lmi::MaximizeMinEigenvalue(problem, x0, opts);
    Eigen::VectorXd x = res.x;
    if (res.t < 10.0 * tol && res.t_upper >= -10.0 * tol) {
      x = lmi::PolishKernel(problem, x);
    }
    if (TryAccept(ctx, lmi::Compose(basis, x), nu, "lmi")) return true;
  }
  return false;
}

}  // namespace

CertificateSearch FindCertificate(const Realization& re,
                                  const CertificateSearchOptions& options) {
  re.Validate();
  const int n = re.states();
  if (options.target_nu && (*options.target_nu < 0 || *options.target_nu > n)) {
    throw std::invalid_argument("FindCertificate: target nu out of range");
  }
  CertificateSearch result;
  SearchContext ctx{re, options, result};

  std::vector<int> nus;
  if (options.target_nu) {
    nus.push_back(*options.target_nu);
  } else {
    for (int nu = 0; nu <= n; ++nu) nus.push_back(nu);
  }

  if (options.use_riccati && TryRiccati(ctx, options.target_nu)) return result;
  for (int nu : nus) {
    if (TryAccept(ctx, Signature(nu, n), nu, "seed")) return result;
  }
  if (n == 0) return result;

  const bool real_only = re.IsReal();
  for (int nu : nus) {
    std::mt19937_64 rng(options.seed + 7919ULL * static_cast<std::uint64_t>(nu));
    for (int restart = 0; restart <= options.random_restarts; ++restart) {
      const ComplexMatrix frame = restart == 0 ? ComplexMatrix::Identity(n, n)
                                               : RandomUnitary(n, real_only, rng);
      if (TryLmi(ctx, nu, frame)) return result;
    }
  }
  return result;
}

PositivityReport IsPositive(const Realization& re, std::optional<double> tol) {
  re.Validate();
  PositivityReport out;
  CertificateSearchOptions opts;
  opts.target_nu = re.states();
  opts.tol = tol;
  const CertificateSearch search = FindCertificate(re, opts);
  if (search.found()) {
    out.certified = true;
    out.certificate = search.certificate;
  }

  const double sample_tol = tol.value_or(1e-7);
  bool sampled = true;
  for (const Complex& pole : Poles(re)) {
    if (pole.real() > 1e-7 * std::max(1.0, std::abs(pole))) {
      sampled = false;
      break;
    }
  }
  if (sampled) {
    std::vector<double> omegas = {0.0};
    for (int k = 0; k < 13; ++k) {
      const double w = std::pow(10.0, -3.0 + 0.5 * k);
      omegas.push_back(w);
      omegas.push_back(-w);
    }
    for (int j = 0; j < 13 && sampled; ++j) {
      const double sigma = std::pow(10.0, -3.0 + 0.5 * j);
      for (double w : omegas) {
        ComplexMatrix f;
        try {
          f = Evaluate(re, Complex(sigma, w), 1e-12);
        } catch (const PoleError&) {
          continue;
        }
        if (HermitianEig(HermitianPart(f + f.adjoint())).values(0) < -sample_tol) {
          sampled = false;
          break;
        }
      }
    }
  }
  if (sampled) sampled = BoundaryOracle(re, 200, sample_tol).is_gp;
  out.sampled_positive = sampled;
  out.positive = out.certified || out.sampled_positive;
  return out;
}

}  // namespace gpreal
