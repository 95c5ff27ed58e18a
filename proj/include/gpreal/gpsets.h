#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gpreal/prl.h"
#include "gpreal/realization.h"

namespace gpreal {

/// (r, nu, p): realizations of size r with p ports certified by a Hhat of
/// inertia (nu, 0, r - p - nu).
struct GpClass {
  int r = 2;
  int nu = 0;
  int p = 1;

  /// Throws std::invalid_argument unless r >= 2, 1 <= p <= r - 1 and
  /// 0 <= nu <= r - p.
  void Validate() const;
  bool operator==(const GpClass&) const = default;
};

std::string ToString(const GpClass& cls);

struct GpMembership {
  GpClass cls;
  LyapunovCertificate certificate;
};

struct ClassificationReport {
  std::vector<GpMembership> memberships;
  bool minimal = false;
  int mcmillan = 0;
  double rank_tolerance = 1e-9;
};

struct ClassifyOptions {
  std::optional<double> tol;
  std::uint64_t seed = 1;
  double rank_tolerance = 1e-9;
};

/// Runs the certificate search for every nu in [0, r - p] and lists each
/// class that certifies; the classes may overlap.
ClassificationReport Classify(const SystemMatrix& sys, const ClassifyOptions& options = {});

/// A member of the closed cone of diag(E_nu, I_p), so the state block of
/// the certificate is E_{nu, r-p}.
SystemMatrix Construct(const GpClass& cls, std::uint64_t seed);

/// (JA, JB, C, D) and (AJ, B, CJ, D) with J = diag(I_nu, -I_{n-nu}).
std::pair<Realization, Realization> JTransform(const Realization& re, int nu);

/// The classes (r, 0, p), ..., (r, r - p, p).
std::vector<GpClass> UnionCover(int r, int p);

}  // namespace gpreal
