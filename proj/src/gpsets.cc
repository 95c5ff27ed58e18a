#include "gpreal/gpsets.h"

#include <stdexcept>

#include "gpreal/lyapcone.h"

namespace gpreal {

void GpClass::Validate() const {
  if (r < 2 || p < 1 || p > r - 1 || nu < 0 || nu > r - p) {
    throw std::invalid_argument("invalid class " + ToString(*this));
  }
}

std::string ToString(const GpClass& cls) {
  return "(" + std::to_string(cls.r) + "," + std::to_string(cls.nu) + "," +
         std::to_string(cls.p) + ")";
}

ClassificationReport Classify(const SystemMatrix& sys, const ClassifyOptions& options) {
  sys.Validate();
  const Realization re = Partition(sys);
  ClassificationReport report;
  report.rank_tolerance = options.rank_tolerance;
  report.mcmillan = McMillanDegree(re, options.rank_tolerance);
  report.minimal = report.mcmillan == re.states();
  for (int nu = 0; nu <= re.states(); ++nu) {
    CertificateSearchOptions search_options;
    search_options.target_nu = nu;
    search_options.tol = options.tol;
    search_options.seed = options.seed;
    const CertificateSearch search = FindCertificate(re, search_options);
    if (search.found()) {
      report.memberships.push_back({GpClass{sys.size(), nu, sys.p}, search.certificate});
    }
  }
  return report;
}

SystemMatrix Construct(const GpClass& cls, std::uint64_t seed) {
  cls.Validate();
  const int n = cls.r - cls.p;
  ComplexMatrix h = ComplexMatrix::Identity(cls.r, cls.r);
  h.topLeftCorner(n, n) = Signature(cls.nu, n);
  return SystemMatrix{SampleCone(h, seed), cls.p};
}

std::pair<Realization, Realization> JTransform(const Realization& re, int nu) {
  re.Validate();
  const int n = re.states();
  if (nu < 0 || nu > n) throw std::invalid_argument("JTransform: nu out of range");
  const ComplexMatrix j = -Signature(nu, n);
  Realization left{j * re.A, j * re.B, re.C, re.D};
  Realization right{re.A * j, re.B, re.C * j, re.D};
  return {left, right};
}

std::vector<GpClass> UnionCover(int r, int p) {
  if (p < 1 || r <= p) throw std::invalid_argument("UnionCover: need r > p >= 1");
  std::vector<GpClass> out;
  for (int nu = 0; nu <= r - p; ++nu) out.push_back({r, nu, p});
  return out;
}

}  // namespace gpreal
