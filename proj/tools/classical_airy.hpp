// Classical Airy function and kernel from the standard library Bessel functions.

#ifndef HOAIRY_TOOLS_CLASSICAL_AIRY_HPP_
#define HOAIRY_TOOLS_CLASSICAL_AIRY_HPP_

#include <cmath>
#include <numbers>
#include <utility>

namespace hoairy::cli {

/// (Ai(x), Ai'(x)).
inline std::pair<double, double> classical_airy(double x) {
  constexpr double pi = std::numbers::pi;
  if (x == 0.0) {
    // Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3).
    return {std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0), -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0)};
  }
  const double a = std::abs(x);
  const double zeta = 2.0 / 3.0 * a * std::sqrt(a);
  if (x > 0.0) {
    const double ai = std::sqrt(a / 3.0) * std::cyl_bessel_k(1.0 / 3.0, zeta) / pi;
    const double dai = -a / (pi * std::sqrt(3.0)) * std::cyl_bessel_k(2.0 / 3.0, zeta);
    return {ai, dai};
  }
  // J_{-v} = cos(v pi) J_v - sin(v pi) Y_v.
  auto j_neg = [&](double v) {
    return std::cos(v * pi) * std::cyl_bessel_j(v, zeta) - std::sin(v * pi) * std::cyl_neumann(v, zeta);
  };
  const double ai = std::sqrt(a) / 3.0 * (std::cyl_bessel_j(1.0 / 3.0, zeta) + j_neg(1.0 / 3.0));
  const double dai = a / 3.0 * (std::cyl_bessel_j(2.0 / 3.0, zeta) - j_neg(2.0 / 3.0));
  return {ai, dai};
}

/// (Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x - y), and Ai'(x)^2 - x Ai(x)^2 on the diagonal.
inline double classical_airy_kernel(double x, double y) {
  const auto [ax, dx] = classical_airy(x);
  if (x == y) return dx * dx - x * ax * ax;
  const auto [ay, dy] = classical_airy(y);
  return (ax * dy - dx * ay) / (x - y);
}

}  // namespace hoairy::cli

#endif  // HOAIRY_TOOLS_CLASSICAL_AIRY_HPP_
