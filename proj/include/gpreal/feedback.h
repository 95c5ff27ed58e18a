#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpreal/prl.h"
#include "gpreal/realization.h"

namespace gpreal {

/// x' = A x + B u, y = C x (no feedthrough).
struct FeedbackProblem {
  ComplexMatrix A;  // n x n
  ComplexMatrix B;  // n x p
  ComplexMatrix C;  // p x n

  void Validate() const;
  Realization OpenLoop() const;
};

/// Reads (A, B, C) from a system matrix; throws std::invalid_argument when
/// its D block is nonzero.
FeedbackProblem FromSystemMatrix(const SystemMatrix& sys);

struct FeedbackConditions {
  bool cond_a = false;  // C = -B* Hhat
  bool cond_b = false;  // N* (A G + G A*) N >= 0 on the null space of B*, G = Hhat^{-1}
  double residual_a = 0.0;
  double min_eigenvalue_b = 0.0;  // +inf when the null space is trivial
};

/// Throws SingularMatrixError for a singular Hhat.
FeedbackConditions CheckConditions(const FeedbackProblem& fp, const ComplexMatrix& hhat,
                                   double tol = 1e-9);

enum class FeedbackHStatus { found, infeasible_cond_a, infeasible_cond_b };

std::string ToString(FeedbackHStatus status);

struct FeedbackHOptions {
  double tol = 1e-9;
  std::uint64_t seed = 1;
  int random_restarts = 4;
  std::vector<double> radii = {1.0, 10.0, 100.0};
};

struct FeedbackHResult {
  FeedbackHStatus status = FeedbackHStatus::infeasible_cond_b;
  ComplexMatrix Hhat;
  double residual_a = 0.0;
  double best_min_eigenvalue = -std::numeric_limits<double>::infinity();

  bool found() const { return status == FeedbackHStatus::found; }
};

/// Searches over G = Hhat^{-1}: condition (a) becomes the affine constraint
/// C G = -B*, condition (b) a linear matrix inequality in G. Signature
/// matrices are tried first.
FeedbackHResult FindFeedbackH(const FeedbackProblem& fp, const FeedbackHOptions& options = {});

struct SynthesisOptions {
  double tol = 1e-9;
  double k_max = 1e6;
};

struct BisectionStep {
  double kappa = 0.0;
  double min_eigenvalue = 0.0;
};

struct FeedbackCertificate {
  bool feasible = false;
  ComplexMatrix Hhat;
  double kappa = 0.0;  // K = -kappa I
  ComplexMatrix K;
  Realization closed_loop;
  LyapunovCertificate certificate;
  std::vector<BisectionStep> trace;  // in evaluation order
  bool monotone = true;              // min eigenvalue nondecreasing in kappa along the trace
  double k_max = 1e6;
};

/// W(kappa) = A G + G A* + 2 kappa B B*; bisects for the smallest kappa in
/// [0, k_max] with W(kappa) >= -tol and returns K = -kappa I with the closed
/// loop certificate for the same Hhat.
FeedbackCertificate SynthesizeK(const FeedbackProblem& fp, const ComplexMatrix& hhat,
                                const SynthesisOptions& options = {});

/// (A + B K C, B, C, 0).
Realization ClosedLoop(const FeedbackProblem& fp, const ComplexMatrix& k);

/// The closed loop for K with K + K* <= tol re-certifies with Hhat.
bool InvarianceHolds(const SystemMatrix& sys, const ComplexMatrix& hhat, const ComplexMatrix& k,
                     std::optional<double> tol = std::nullopt);

}  // namespace gpreal
