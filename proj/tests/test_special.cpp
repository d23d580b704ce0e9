#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hoairy/errors.hpp"
#include "hoairy/quadrature.hpp"
#include "hoairy/special_functions.hpp"

using namespace hoairy;
using std::numbers::pi;

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  for (int n : {1, 2, 5, 16, 64, 401}) {
    const auto rule = gauss_legendre(n);
    CHECK(rule->weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 1; i < n; ++i) CHECK(rule->nodes[i] > rule->nodes[i - 1]);
    const int deg = 2 * n - 2;
    const double exact = 2.0 / (deg + 1);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += rule->weights[i] * std::pow(rule->nodes[i], deg);
    CHECK(s == doctest::Approx(exact).epsilon(1e-13));
  }
  const auto mapped = gauss_legendre(20, 1.0, 4.0);
  CHECK(mapped.weights.sum() == doctest::Approx(3.0));
  CHECK((mapped.weights.array() * mapped.nodes.array().exp()).sum() ==
        doctest::Approx(std::exp(4.0) - std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("chebyshev interpolation reproduces smooth functions") {
  const auto u = chebyshev_points(20);
  Eigen::VectorXd v(u.size());
  for (int k = 0; k < u.size(); ++k) v[k] = std::cos(2.0 * u[k]);
  const auto c = chebyshev_coefficients(v);
  for (double t : {-1.0, -0.3, 0.0, 0.77, 1.0})
    CHECK(std::abs(chebyshev_eval(c.data(), static_cast<int>(c.size()), t) - std::cos(2.0 * t)) < 1e-14);
}

TEST_CASE("airy_hi n = 1 matches the classical Airy function") {
  double worst = 0.0;
  for (int i = 0; i <= 50; ++i) {
    const double x = -10.0 + 0.4 * i;
    worst = std::max(worst, std::abs(airy_hi(1, x) - boost::math::airy_ai(x)));
  }
  CHECK(worst < 1e-12);
  CHECK(airy_hi(1, 0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-14));
  CHECK(std::abs(airy_hi(1, 10.0) - boost::math::airy_ai(10.0)) < 1e-12);
  // Relative accuracy persists in the decaying tail.
  for (double x : {10.0, 15.0, 20.0})
    CHECK(airy_hi(1, x) == doctest::Approx(boost::math::airy_ai(x)).epsilon(1e-10));
}

TEST_CASE("airy_hi n = 2 at the origin") {
  const double expected = std::pow(5.0, -0.8) * std::tgamma(0.2) * std::cos(pi / 10) / pi;
  CHECK(airy_hi(2, 0.0) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("airy_hi solves y^(2n) = (-1)^(n+1) x y") {
  for (int n = 2; n <= 3; ++n) {
    for (double x : {-6.0, -1.3, 0.4, 2.5}) {
      // Central difference of order 2n with step h; truncation O(h^2).
      const double h = 0.05;
      std::vector<double> f;
      for (int j = -n; j <= n; ++j) f.push_back(airy_hi(n, x + j * h));
      double d = 0.0;
      for (int j = 0; j <= 2 * n; ++j) {
        const double binom = std::tgamma(2 * n + 1) / (std::tgamma(j + 1) * std::tgamma(2 * n - j + 1));
        d += ((j % 2) ? -1.0 : 1.0) * binom * f[static_cast<std::size_t>(2 * n - j)];
      }
      d /= std::pow(h, 2 * n);
      const double rhs = ((n % 2) ? 1.0 : -1.0) * x * f[static_cast<std::size_t>(n)];
      CHECK(std::abs(d - rhs) < 2e-2 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("quadrature self-consistency under node doubling") {
  for (int n = 1; n <= 3; ++n) {
    for (double x : {-50.0, -20.0, -5.0, -1.0, 0.0, 1.0, 5.0}) {
      const auto r = airy_hi_checked(n, x);
      CHECK(r.error_estimate < 1e-11);
      CHECK_FALSE(r.precision_warning);
    }
  }
  const auto plan = make_contour_plan(make_model(1, {}), -4.0);
  REQUIRE(plan.saddle_points.size() == 1);
  CHECK(plan.saddle_points[0] == doctest::Approx(2.0));
  CHECK(plan.truncation_threshold < 1e-17);
}

TEST_CASE("airy_hi decays superexponentially with the saddle rate") {
  for (int n = 1; n <= 3; ++n) {
    const double p = (2.0 * n + 1) / (2.0 * n);
    const double rate = (2.0 * n / (2.0 * n + 1)) * std::sin(pi / (2.0 * n));
    // Envelope samples: local maxima of |A| (every point for n = 1).
    std::vector<double> xs, ys;
    double prev2 = 0, prev1 = 0;
    const double dx = 0.01;
    for (double x = 2.0; x <= 20.0; x += dx) {
      const double v = std::abs(airy_hi(n, x));
      if (n == 1) {
        xs.push_back(std::pow(x, p));
        ys.push_back(std::log(v) + (2.0 * n - 1) / (4.0 * n) * std::log(x));
      } else if (prev1 > prev2 && prev1 > v) {
        xs.push_back(std::pow(x - dx, p));
        ys.push_back(std::log(prev1) + (2.0 * n - 1) / (4.0 * n) * std::log(x - dx));
      }
      prev2 = prev1;
      prev1 = v;
      if (n == 1) x += 0.5 - dx;
    }
    REQUIRE(xs.size() >= 4);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i], sy += ys[i], sxx += xs[i] * xs[i], sxy += xs[i] * ys[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(slope < 0.0);
    CHECK(slope == doctest::Approx(-rate).epsilon(0.05));
  }
}

TEST_CASE("wave_a reduces to airy_hi and is smooth in tau") {
  for (double x : {-2.0, 0.0, 2.0}) {
    CHECK(std::abs(wave_a(make_model(2, {0.0}), x) - airy_hi(2, x)) < 1e-10);
  }
  CHECK(std::abs(wave_a(make_model(1, {}), 0.0) - airy_hi(1, 0.0)) < 1e-10);
  const double a0 = wave_a(make_model(2, {1.0}), -3.0);
  const double a1 = wave_a(make_model(2, {1.0 + 1e-6}), -3.0);
  CHECK(std::abs(a1 - a0) < 1e-5);
  // A deformed model with a dip in Q below zero: x > 0 still crosses a real saddle.
  const auto dip = make_model(3, {0.0, 3.0});  // Q = s^6 - 3 s^4 dips to -4 at s^2 = 2
  CHECK_FALSE(make_contour_plan(dip, 1.0).saddle_points.empty());
  CHECK(wave_a_checked(dip, 1.0).error_estimate < 1e-11);
}

TEST_CASE("log_gamma against real lgamma and modulus identities") {
  for (double x : {0.3, 1.0, 1.7, 12.5, 40.0})
    CHECK(log_gamma({x, 0.0}).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-14));
  for (double y : {0.05, 0.2, 1.0, 3.0}) {
    const double lhs = 2.0 * log_gamma({0.0, y}).real();
    CHECK(lhs == doctest::Approx(std::log(pi / (y * std::sinh(pi * y)))).epsilon(1e-13));
    const double half = 2.0 * log_gamma({0.5, y}).real();
    CHECK(half == doctest::Approx(std::log(pi / std::cosh(pi * y))).epsilon(1e-13));
  }
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const std::complex<double> z(std::abs(u(rng)) + 0.1, u(rng));
    const auto diff = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
    CHECK(std::abs(diff) < 1e-13);
  }
  CHECK_THROWS_AS(log_gamma({0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(log_gamma({-3.0, 0.0}), DomainError);
}

TEST_CASE("arg_gamma values and branch") {
  CHECK(arg_gamma({0.5, 0.0}) == 0.0);
  CHECK(arg_gamma({1.0, 0.0}) == 0.0);
  // Im ln Gamma(iy) = -pi/2 - gamma_E y + sum_k (y/k - atan(y/k)).
  for (double y : {0.2, 0.7, 1.5}) {
    double s = 0.0;
    const int terms = 200000;
    for (int k = 1; k <= terms; ++k) s += y / k - std::atan(y / k);
    s += y * y * y / (6.0 * terms * static_cast<double>(terms));
    CHECK(arg_gamma({0.0, y}) == doctest::Approx(-pi / 2 - euler_gamma() * y + s).epsilon(1e-11));
  }
  CHECK(arg_gamma({0.0, 1e-6}) == doctest::Approx(-pi / 2).epsilon(1e-6));
  // Continuity along Re z = 1/2 across large kappa (no 2 pi jumps).
  double prev = arg_gamma({0.5, 0.0});
  for (double k = 0.05; k <= 6.0; k += 0.05) {
    const double cur = arg_gamma({0.5, k});
    CHECK(std::abs(cur - prev) < 0.2);
    prev = cur;
  }
}

TEST_CASE("barnes_g_pair") {
  CHECK(barnes_g_pair(0.0) == 1.0);
  for (double y : {0.1, 0.5, 1.3, 2.0}) CHECK(barnes_g_pair(y) == barnes_g_pair(-y));
  const double y = 1e-3;
  CHECK(log_barnes_g_pair(y) / (y * y) == doctest::Approx(1.0 + euler_gamma()).epsilon(1e-6));
  CHECK(barnes_g_pair(1e-4) >= 1.0 - 1e-12);
  // Independent brute-force product: 2 Re ln G(1 + iy).
  for (double yy : {0.5, 2.0}) {
    const std::complex<double> z(0.0, yy);
    std::complex<double> s = -(z + (1.0 + euler_gamma()) * z * z) / 2.0 + z / 2.0 * std::log(2.0 * pi);
    const int terms = 400000;
    for (int k = 1; k <= terms; ++k) s += double(k) * std::log(1.0 + z / double(k)) - z + z * z / (2.0 * k);
    CHECK(log_barnes_g_pair(yy) == doctest::Approx(2.0 * s.real()).epsilon(1e-9));
  }
}

TEST_CASE("euler_gamma") {
  const double g = euler_gamma();
  CHECK(g > 0.5);
  CHECK(g < 0.6);
  const int big = 1000000;
  double h = 0.0;
  for (int k = big; k >= 1; --k) h += 1.0 / k;
  const double approx = h - std::log(double(big)) - 0.5 / big + 1.0 / (12.0 * double(big) * big);
  CHECK(std::abs(approx - g) < 1e-9);
  CHECK(std::abs(std::exp(-g) - std::exp(-approx)) < 1e-9);
}

TEST_CASE("connection parameters") {
  const auto sub = subcritical_params(0.6, 1);
  CHECK(sub.mode == AsymMode::sub);
  CHECK(sub.first == doctest::Approx(0.142069).epsilon(1e-5));
  CHECK(sub.second == doctest::Approx(-0.5 * sub.first * std::log(8.0) + arg_gamma({0.0, sub.first / 2}) + pi / 4));
  CHECK_THROWS_AS(subcritical_params(1.0, 1), DomainError);
  CHECK_THROWS_AS(subcritical_params(0.0, 1), DomainError);

  const auto tiny = subcritical_params(std::sqrt(1.0 - std::exp(-1e-6 * pi)), 2);
  CHECK(tiny.first == doctest::Approx(1e-6).epsilon(1e-6));

  const auto crit = supercritical_params(std::sqrt(2.0), 1);
  CHECK(std::abs(crit.first) < 1e-15);
  CHECK(crit.second == doctest::Approx(pi / 2));
  CHECK(supercritical_params(2.0, 1).first == doctest::Approx(-0.174850).epsilon(1e-5));
  CHECK_THROWS_AS(supercritical_params(1.0, 1), DomainError);
  CHECK_THROWS_AS(supercritical_params(0.5, 1), DomainError);
}
