#pragma once

#include <string>
#include <vector>

#include "gpreal/realization.h"

// Named system matrices from the worked examples. All have p = 1.
namespace gpreal::fixtures {

SystemMatrix LAlpha();
SystemMatrix LBeta();
SystemMatrix LGamma();
SystemMatrix LDelta();
SystemMatrix LXi();
SystemMatrix LEta();
SystemMatrix LTheta();
SystemMatrix LEpsilon();
SystemMatrix LZeta();

/// Reduced (one-state) realizations of 1/(s+1) and (s+1)/s; the first is
/// the corrected matrix [[-1, 1], [1, 0]], the second its inverse.
SystemMatrix LHatGamma();
SystemMatrix LHatXi();

/// [[0, 0, 0], [0, a, b], [0, -b, 0]]
SystemMatrix IntersectionExample(double a, double b);

/// [[a, a, b1], [a, a, b2], [b1, -b2, 0]]
SystemMatrix FeedbackExample(double a, double b1, double b2);

struct NamedFixture {
  std::string name;
  SystemMatrix sys;
};

/// alpha, beta, gamma, delta, xi, eta, theta: the realizations sharing
/// the factor diag(-1, 1, 1).
std::vector<NamedFixture> InertiaFixtures();

}  // namespace gpreal::fixtures
