#include <cmath>
#include <sstream>

#include "gpreal/cli.h"
#include "gpreal/feedback.h"
#include "gpreal/fixtures.h"
#include "gpreal/gpsets.h"
#include "gpreal/lyapcone.h"
#include "gpreal/prl.h"

namespace gpreal::cli {

using json_io::Json;

namespace {

std::string PolyText(const Polynomial& poly) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < poly.size(); ++i) {
    if (i) os << ",";
    os << poly[i].real();
    if (poly[i].imag() != 0.0) os << (poly[i].imag() > 0 ? "+" : "") << poly[i].imag() << "i";
  }
  os << "]";
  return os.str();
}

bool SamePoly(const Polynomial& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < b.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

// monic denominator
ScalarRational Normalized(ScalarRational f) {
  const Complex lead = f.denominator.back();
  for (auto& c : f.numerator) c /= lead;
  for (auto& c : f.denominator) c /= lead;
  return f;
}

struct Recorder {
  std::vector<DemoCheck> checks;

  void Add(const std::string& name, bool ok, const std::string& detail = "") {
    checks.push_back({name, ok ? "pass" : "fail", detail});
  }
  void Discrepancy(const std::string& name, bool reproduced, const std::string& detail) {
    checks.push_back({name, reproduced ? "expected_discrepancy" : "fail", detail});
  }
  template <typename F>
  void Guard(const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      Add(name, false, std::string("exception: ") + e.what());
    }
  }
};

void TransferFunctions(Recorder& rec) {
  struct Printed {
    std::string name;
    SystemMatrix sys;
    std::vector<double> num;
    std::vector<double> den;
    bool reduce;
  };
  const std::vector<Printed> printed = {
      {"alpha", fixtures::LAlpha(), {-1, 1}, {-1, -1, 1}, false},
      {"beta", fixtures::LBeta(), {0, 1}, {-1, 1}, true},
      {"gamma", fixtures::LGamma(), {1}, {1, 1}, true},
      {"delta", fixtures::LDelta(), {-4}, {0, 0, 1}, false},
      {"xi", fixtures::LXi(), {1, 1}, {0, 1}, true},
  };
  for (const auto& p : printed) {
    rec.Guard("transfer_function_" + p.name, [&] {
      ScalarRational f = ToScalarRational(Partition(p.sys));
      if (p.reduce) f = Normalized(f.Reduced());
      const bool ok = SamePoly(f.numerator, p.num, 1e-9) && SamePoly(f.denominator, p.den, 1e-9);
      rec.Add("transfer_function_" + p.name, ok,
              "num " + PolyText(f.numerator) + " den " + PolyText(f.denominator));
    });
  }
  for (const auto& [name, sys] : {std::pair{"eta", fixtures::LEta()}, std::pair{"theta", fixtures::LTheta()}}) {
    rec.Guard(std::string("transfer_function_") + name, [&] {
      const ScalarRational f = ToScalarRational(Partition(sys));
      const bool computed = f.exact && SamePoly(f.numerator, {-9, 5, 1}, 0.0) &&
                            SamePoly(f.denominator, {-2, 0, 1}, 0.0);
      rec.Discrepancy(std::string("transfer_function_") + name, computed,
                      "printed numerator s^2+5s-1, exact numerator " + PolyText(f.numerator));
    });
  }
  rec.Guard("hat_gamma_printed", [&] {
    const SystemMatrix printed_hat{RealMatrix({{-1, 0}, {1, 0}}), 1};
    const ScalarRational f = ToScalarRational(Partition(printed_hat));
    const ScalarRational g = Normalized(ToScalarRational(Partition(fixtures::LHatGamma())));
    const bool zero = SamePoly(TrimPolynomial(f.numerator), {0}, 0.0);
    const bool corrected = SamePoly(g.numerator, {1}, 1e-12) && SamePoly(g.denominator, {1, 1}, 1e-12) &&
                           ApproxEqual(Inverse(fixtures::LHatGamma().L), fixtures::LHatXi().L, 1e-12);
    rec.Discrepancy("hat_gamma_printed", zero && corrected,
                    "printed [[-1,0],[1,0]] realizes 0; [[-1,1],[1,0]] realizes 1/(s+1)");
  });
}

void Memberships(Recorder& rec) {
  const ComplexMatrix h = RealMatrix({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  for (const auto& f : fixtures::InertiaFixtures()) {
    rec.Guard("member_" + f.name, [&] {
      const ConeMembership m = Member(f.sys.L, h);
      rec.Add("member_" + f.name, m.IsMember() && m.min_eigenvalue >= -1e-9,
              ToString(m.status));
    });
    rec.Guard("certificate_" + f.name, [&] {
      CertificateSearchOptions opts;
      opts.target_nu = 1;
      const CertificateSearch s = FindCertificate(Partition(f.sys), opts);
      rec.Add("certificate_" + f.name, s.found(), s.method);
    });
  }
  rec.Guard("xi_is_gamma_inverse", [&] {
    rec.Add("xi_is_gamma_inverse",
            ApproxEqual(Inverse(fixtures::LGamma().L), fixtures::LXi().L, 1e-12));
  });
  rec.Guard("beta_is_eta_theta_midpoint", [&] {
    const SystemMatrix mid = ConvexCombine(fixtures::LEta(), fixtures::LTheta(), 0.5);
    rec.Add("beta_is_eta_theta_midpoint", mid.L == fixtures::LBeta().L);
  });
}

void CounterExample(Recorder& rec) {
  rec.Guard("epsilon_similar_to_delta", [&] {
    const Realization moved =
        CoordinateTransform(Partition(fixtures::LDelta()), RealMatrix({{0, -1}, {1, 0}}));
    rec.Add("epsilon_similar_to_delta", ApproxEqual(Assemble(moved).L, fixtures::LEpsilon().L, 1e-12));
  });
  rec.Guard("zeta_midpoint", [&] {
    const SystemMatrix mid = ConvexCombine(fixtures::LDelta(), fixtures::LEpsilon(), 0.5);
    rec.Add("zeta_midpoint", mid.L == fixtures::LZeta().L);
  });
  rec.Guard("zeta_not_gp", [&] {
    const BoundaryReport b = BoundaryOracle(Partition(fixtures::LZeta()));
    double at_zero = std::nan("");
    for (size_t i = 0; i < b.profile.omegas.size(); ++i) {
      if (b.profile.omegas[i] == 0.0) at_zero = b.profile.min_eigs[i];
    }
    rec.Add("zeta_not_gp", !b.is_gp && std::abs(at_zero + 2.0) <= 1e-9,
            "value at w=0: " + std::to_string(at_zero));
  });
  rec.Guard("zeta_no_certificate", [&] {
    bool none = true;
    for (int nu = 0; nu <= 2; ++nu) {
      CertificateSearchOptions opts;
      opts.target_nu = nu;
      none = none && !FindCertificate(Partition(fixtures::LZeta()), opts).found();
    }
    rec.Add("zeta_no_certificate", none);
  });
  rec.Guard("epsilon_outside_common_factor", [&] {
    const ComplexMatrix h = RealMatrix({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    rec.Add("epsilon_outside_common_factor", !Member(fixtures::LEpsilon().L, h).IsMember());
  });
}

void Sets(Recorder& rec) {
  rec.Guard("intersection_example", [&] {
    const ClassificationReport report = Classify(fixtures::IntersectionExample(1.0, 1.0));
    bool has0 = false, has1 = false;
    for (const auto& m : report.memberships) {
      has0 = has0 || m.cls == GpClass{3, 0, 1};
      has1 = has1 || m.cls == GpClass{3, 1, 1};
    }
    rec.Add("intersection_example", has0 && has1);
  });
  rec.Guard("gamma_positive_not_minimal", [&] {
    const Realization re = Partition(fixtures::LGamma());
    rec.Add("gamma_positive_not_minimal", IsPositive(re).positive && !IsMinimal(re));
  });
  rec.Guard("eta_theta_nonconvex", [&] {
    const bool minimal = IsMinimal(Partition(fixtures::LEta())) && IsMinimal(Partition(fixtures::LTheta()));
    const SystemMatrix mid = ConvexCombine(fixtures::LEta(), fixtures::LTheta(), 0.5);
    rec.Add("eta_theta_nonconvex", minimal && McMillanDegree(Partition(mid)) == 1);
  });
}

void Feedback(Recorder& rec) {
  const FeedbackProblem fp = FromSystemMatrix(fixtures::FeedbackExample(1.0, 2.0, 1.0));
  const ComplexMatrix hhat = RealMatrix({{-1, 0}, {0, 1}});
  rec.Guard("feedback_conditions", [&] {
    const FeedbackConditions c = CheckConditions(fp, hhat);
    rec.Add("feedback_conditions", c.cond_a && c.cond_b);
  });
  rec.Guard("feedback_threshold", [&] {
    const FeedbackCertificate cert = SynthesizeK(fp, hhat);
    rec.Add("feedback_threshold", cert.feasible && std::abs(cert.kappa - 1.0 / 3.0) <= 1e-6,
            "kappa " + std::to_string(cert.kappa));
  });
  rec.Guard("feedback_half_gain", [&] {
    const Realization cl = ClosedLoop(fp, RealMatrix({{-0.5}}));
    const CertificateCheck check = CheckCertificate(cl, hhat);
    const ComplexMatrix block = check.certificate.Q.topLeftCorner(2, 2);
    rec.Add("feedback_half_gain",
            check.accepted && ApproxEqual(block, RealMatrix({{2, -2}, {-2, 3}}), 1e-12));
  });
  rec.Guard("feedback_open_loop_not_gp", [&] {
    const bool open_gp = BoundaryOracle(fp.OpenLoop()).is_gp;
    const FeedbackCertificate cert = SynthesizeK(fp, hhat);
    const bool closed_gp = BoundaryOracle(cert.closed_loop).is_gp;
    rec.Add("feedback_open_loop_not_gp", !open_gp && closed_gp);
  });
  rec.Guard("feedback_printed_instance", [&] {
    const FeedbackProblem same = FromSystemMatrix(fixtures::FeedbackExample(1.0, 1.0, 1.0));
    const ComplexMatrix l_cl = Assemble(ClosedLoop(same, RealMatrix({{-1}}))).L;
    const bool differs = ApproxEqual(l_cl, RealMatrix({{0, 2, 1}, {0, 2, 1}, {1, -1, 0}}), 1e-12) &&
                         !ApproxEqual(l_cl, fixtures::LAlpha().L, 1e-12);
    rec.Discrepancy("feedback_printed_instance", differs,
                    "(a,b1,b2)=(1,1,1), K=-1 gives [[0,2,1],[0,2,1],[1,-1,0]], not L_alpha");
  });
}

}  // namespace

std::vector<DemoCheck> RunDemo() {
  Recorder rec;
  TransferFunctions(rec);
  Memberships(rec);
  CounterExample(rec);
  Sets(rec);
  Feedback(rec);
  return rec.checks;
}

Json DemoToJson(const std::vector<DemoCheck>& checks) {
  Json list = Json::array();
  bool passed = true;
  for (const auto& c : checks) {
    list.push_back(Json{{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
    passed = passed && c.status != "fail";
  }
  return Json{{"checks", list}, {"passed", passed}};
}

}  // namespace gpreal::cli
