#include "hoairy/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hoairy/errors.hpp"

namespace hoairy {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const GaussLegendreRule>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const GaussLegendreRule>(build_rule(n));
  std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(rule)).first->second;
}

GaussLegendreRule gauss_legendre(int n, double a, double b) {
  const auto base = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  return {(base->nodes.array() * half + mid).matrix(), base->weights * half};
}

Eigen::VectorXd chebyshev_points(int degree) {
  Eigen::VectorXd u(degree + 1);
  for (int k = 0; k <= degree; ++k) u[k] = std::cos(std::numbers::pi * (k + 0.5) / (degree + 1));
  return u;
}

Eigen::VectorXd chebyshev_coefficients(const Eigen::VectorXd& values) {
  const auto m = static_cast<int>(values.size());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
  for (int j = 0; j < m; ++j) {
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += values[k] * std::cos(std::numbers::pi * j * (k + 0.5) / m);
    c[j] = (j == 0 ? 1.0 : 2.0) * s / m;
  }
  return c;
}

double chebyshev_eval(const double* coeffs, int count, double u) {
  double b1 = 0.0, b2 = 0.0;
  const double two_u = 2.0 * u;
  for (int j = count - 1; j >= 1; --j) {
    const double b0 = coeffs[j] + two_u * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs[0] + u * b1 - b2;
}

}  // namespace hoairy
