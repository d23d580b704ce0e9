// Independent reference computations shared by the tests.

#ifndef HOAIRY_TESTS_ORACLES_HPP_
#define HOAIRY_TESTS_ORACLES_HPP_

#include <array>
#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <vector>

namespace oracle {

// q'' = 2q^3 + x q by classical RK4 from q = rho Ai at x0 down to x1 with step h.
// Entry k holds q(x0 - k h).
inline std::vector<double> solve_pii(double rho, double x0, double x1, double h) {
  using State = std::array<double, 2>;
  auto f = [](double x, const State& s) { return State{s[1], 2 * s[0] * s[0] * s[0] + x * s[0]}; };
  State s{rho * boost::math::airy_ai(x0), rho * boost::math::airy_ai_prime(x0)};
  std::vector<double> q{s[0]};
  const int steps = static_cast<int>(std::lround((x0 - x1) / h));
  double x = x0;
  for (int i = 0; i < steps; ++i) {
    const State k1 = f(x, s);
    const State k2 = f(x - h / 2, {s[0] - h / 2 * k1[0], s[1] - h / 2 * k1[1]});
    const State k3 = f(x - h / 2, {s[0] - h / 2 * k2[0], s[1] - h / 2 * k2[1]});
    const State k4 = f(x - h, {s[0] - h * k3[0], s[1] - h * k3[1]});
    for (int j = 0; j < 2; ++j) s[j] -= h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    x -= h;
    q.push_back(s[0]);
  }
  return q;
}

// Classical Airy kernel; the diagonal uses Ai'(x)^2 - x Ai(x)^2.
inline double airy_kernel(double x, double y) {
  using boost::math::airy_ai;
  using boost::math::airy_ai_prime;
  if (std::abs(x - y) < 1e-9) {
    const double a = airy_ai(x), d = airy_ai_prime(x);
    return d * d - x * a * a;
  }
  return (airy_ai(x) * airy_ai_prime(y) - airy_ai_prime(x) * airy_ai(y)) / (x - y);
}

}  // namespace oracle

#endif  // HOAIRY_TESTS_ORACLES_HPP_
