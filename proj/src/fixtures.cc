#include "gpreal/fixtures.h"

namespace gpreal::fixtures {

namespace {

SystemMatrix Make(std::initializer_list<std::initializer_list<double>> rows) {
  return SystemMatrix{RealMatrix(rows), 1};
}

}  // namespace

SystemMatrix LAlpha() { return Make({{0, 1, 1}, {1, 1, 0}, {1, 0, 0}}); }
SystemMatrix LBeta() { return Make({{-1, 0, 0}, {0, 1, 1}, {0, 1, 1}}); }
SystemMatrix LGamma() { return Make({{-1, 0, 1}, {0, 1, 0}, {1, 0, 0}}); }
SystemMatrix LDelta() { return Make({{-1, -1, 1}, {1, 1, 1}, {1, -1, 0}}); }
SystemMatrix LXi() { return Make({{0, 0, 1}, {0, 1, 0}, {1, 0, 1}}); }
SystemMatrix LEta() { return Make({{-1, -1, 2}, {-1, 1, 1}, {2, 1, 1}}); }
SystemMatrix LTheta() { return Make({{-1, 1, -2}, {1, 1, 1}, {-2, 1, 1}}); }
SystemMatrix LEpsilon() { return Make({{1, -1, 1}, {1, -1, -1}, {-1, -1, 0}}); }
SystemMatrix LZeta() { return Make({{0, -1, 1}, {1, 0, 0}, {0, -1, 0}}); }

// printed as [[-1, 0], [1, 0]], which realizes the zero function
SystemMatrix LHatGamma() { return Make({{-1, 1}, {1, 0}}); }
SystemMatrix LHatXi() { return Make({{0, 1}, {1, 1}}); }

SystemMatrix IntersectionExample(double a, double b) {
  return Make({{0, 0, 0}, {0, a, b}, {0, -b, 0}});
}

SystemMatrix FeedbackExample(double a, double b1, double b2) {
  return Make({{a, a, b1}, {a, a, b2}, {b1, -b2, 0}});
}

std::vector<NamedFixture> InertiaFixtures() {
  return {
      {"alpha", LAlpha()}, {"beta", LBeta()},   {"gamma", LGamma()}, {"delta", LDelta()},
      {"xi", LXi()},       {"eta", LEta()},     {"theta", LTheta()},
  };
}

}  // namespace gpreal::fixtures
