#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "hoairy/errors.hpp"
#include "hoairy/expansions.hpp"
#include "hoairy/model.hpp"
#include "hoairy/puiseux_series.hpp"

using namespace hoairy;

namespace {

Poly tau(int j) { return Poly::variable(j); }

// Least-squares slope of log|err| against log|x|.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& errs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(errs[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

TEST_CASE("rational arithmetic normalizes and detects overflow") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(binomial(Rational(3, 4), 2) == Rational(-3, 32));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  const Rational big(std::int64_t{1} << 62);
  CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_CASE("make_model builds P and validates tau length") {
  const auto m1 = make_model(1, {});
  CHECK(m1.phase_coefficient(1) == 1.0);
  CHECK(phase_polynomial(m1, 2.0) == doctest::Approx(8.0 / 3.0));

  const auto m2 = make_model(2, {0.7});
  CHECK(phase_polynomial(m2, 1.5) == doctest::Approx(std::pow(1.5, 5) / 5 + 0.7 * std::pow(1.5, 3) / 3));

  CHECK_THROWS_AS(make_model(2, {1.0, 2.0}), DimensionError);
  CHECK_THROWS_AS(make_model(0, {}), DomainError);
}

TEST_CASE("q_of_model carries the alternating signs") {
  CHECK(q_of_model(make_model(1, {})).coeffs() == std::map<int, double>{{2, 1.0}});
  const auto q2 = q_of_model(make_model(2, {0.3}));
  CHECK(q2.coefficient(4) == 1.0);
  CHECK(q2.coefficient(2) == -0.3);
  const auto q3 = q_of_model(make_model(3, {0.5, 0.25}));
  CHECK(q3.coefficient(6) == 1.0);
  CHECK(q3.coefficient(4) == -0.25);
  CHECK(q3.coefficient(2) == 0.5);
}

TEST_CASE("a_k symbolic values") {
  for (int n = 1; n <= 4; ++n) {
    const auto a = a_coeffs_symbolic(n, 2 * n + 2);
    CHECK(a[0] == Poly(1));
    const auto zero = a_coeffs(make_model(n, std::vector<double>(static_cast<std::size_t>(n - 1), 0.0)), 2 * n + 2);
    for (std::size_t k = 1; k < zero.size(); ++k) CHECK(zero[k] == 0.0);
  }
  const auto a2 = a_coeffs_symbolic(2, 2);
  CHECK(a2[1] == tau(1) * Rational(1, 4));
  // From the square-root solution of s^4 - t s^2 = X: s = X^{1/4}(1 + t/4 X^{-1/2} + t^2/32 X^{-1} + ...).
  CHECK(a2[2] == tau(1) * tau(1) * Rational(1, 32));

  const auto a3 = a_coeffs_symbolic(3, 3);
  CHECK(a3[1] == tau(2) * Rational(1, 6));
  CHECK(a3[2] == tau(2) * tau(2) * Rational(1, 24) - tau(1) * Rational(1, 6));
  CHECK(a3[3] == tau(2) * tau(2) * tau(2) * Rational(7, 1296) - tau(1) * tau(2) * Rational(1, 36));
}

TEST_CASE("b_k: parity and agreement with the numeric root of Q") {
  for (int n = 1; n <= 3; ++n) {
    const auto b = b_coeffs_symbolic(n, 9);
    CHECK(b[0].is_zero());
    for (std::size_t k = 2; k < b.size(); k += 2) CHECK(b[k].is_zero());
    // a_k coincides with b_{2k-1}.
    const auto a = a_coeffs_symbolic(n, 4);
    for (int k = 1; k <= 4; ++k) CHECK(a[static_cast<std::size_t>(k)] == b[static_cast<std::size_t>(2 * k - 1)]);
  }
  const auto model = make_model(2, {1.3});
  const auto b = b_coeffs(model, 7);
  const double abs_x = 1e6;
  const double root = largest_q_root(model, abs_x);
  double series = std::pow(abs_x, 0.25);
  for (int k = 1; k <= 7; ++k) series += b[static_cast<std::size_t>(k)] * std::pow(abs_x, -k / 4.0);
  CHECK(std::abs(root - series) < 1e-12 * root);
  CHECK(b[1] == doctest::Approx(1.3 / 4));
}

TEST_CASE("z_plus_value: monomial cases and domain error") {
  CHECK(z_plus_value(make_model(1, {}), -1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(z_plus_value(make_model(3, {0.0, 0.0}), -7.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(z_plus_value(make_model(1, {}), 1.0), DomainError);
  const auto m = make_model(3, {-4.0, 0.0});  // Q = s^6 - 4 s^2 has a local max at s = 0.
  CHECK_NOTHROW(z_plus_value(m, -10.0));
  const auto bumpy = make_model(3, {9.0, 6.0});  // Q = s^6 - 6 s^4 + 9 s^2 has a bump of height 4 at s = 1.
  CHECK_THROWS_AS(z_plus_value(bumpy, -1.0), DomainError);
  CHECK_NOTHROW(z_plus_value(bumpy, -100.0));
}

TEST_CASE("z_plus_series matches z_plus_value with the right error order") {
  const auto model = make_model(2, {1.0});
  const auto series = z_plus_series(model, 6);
  CHECK(series.coefficient(Rational(0)) == 0.5);
  CHECK(series.coefficient(Rational(1, 2)) == doctest::Approx(0.125));

  const double z = z_plus_value(model, -1e4);
  CHECK(std::abs(z - evaluate(series, 1e-4)) < 1e-6);

  for (int n = 2; n <= 3; ++n) {
    const auto m = n == 2 ? make_model(2, {1.0}) : make_model(3, {0.6, -0.8});
    const int order = 1;
    const auto s = z_plus_series(m, order);
    std::vector<double> xs{1e3, 1e4, 1e5};
    std::vector<double> errs;
    for (double ax : xs) errs.push_back(std::abs(z_plus_value(m, -ax) - evaluate(s, 1.0 / ax)));
    const double slope = loglog_slope(xs, errs);
    CHECK(slope == doctest::Approx(-(order + 1.0) / n).epsilon(0.05));
  }

  const auto flat = z_plus_series(make_model(3, {0.0, 0.0}), 6);
  CHECK(flat.terms().size() == 1);
}

TEST_CASE("g_eval: oddness and a hand value") {
  // n = 1: g(1/2) = i (1/6 - 1/2), consistent with the 2/3 leading saddle coefficient.
  const auto m1 = make_model(1, {});
  const auto g = g_eval(m1, {0.5, 0.0}, -3.0);
  CHECK(g.real() == doctest::Approx(0.0));
  CHECK(g.imag() == doctest::Approx(-1.0 / 3.0));
  CHECK(std::abs(g_eval(m1, 0.0, -2.0)) == 0.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const auto m3 = make_model(3, {0.4, -1.1});
  for (int i = 0; i < 100; ++i) {
    const std::complex<double> z(u(rng), u(rng));
    const double x = -1.0 - 20.0 * std::abs(u(rng));
    const auto gp = g_eval(m3, z, x);
    const auto gm = g_eval(m3, -z, x);
    CHECK(std::abs(gp + gm) <= 1e-14 * std::abs(gp));
  }
}

TEST_CASE("g_saddle_series: closed form equals substitution of the z+ series") {
  for (int n = 1; n <= 3; ++n) {
    const int kmax = 2 * n + 2;
    const auto closed = g_saddle_series_symbolic(n, kmax);
    const auto substituted = g_saddle_series_by_substitution(n, kmax);
    CHECK(closed.order() == substituted.order());
    CHECK(closed.terms() == substituted.terms());
    for (int k = 0; k <= kmax; ++k) {
      const int odd = 1 + 2 * (n - k);
      CHECK(closed.coefficient(Rational(-odd, 2 * n)) ==
            a_coeffs_symbolic(n, kmax)[static_cast<std::size_t>(k)] * Rational(2 * n, odd));
    }
  }
  const auto lead = g_saddle_series_symbolic(2, 4);
  CHECK(lead.coefficient(Rational(-5, 4)) == Poly(Rational(4, 5)));
  CHECK(lead.coefficient(Rational(-3, 4)) == tau(1) * Rational(1, 3));
  CHECK(g_saddle_series(make_model(2, {0.0}), 6).terms().size() == 1);
}

TEST_CASE("g_saddle_series agrees with g evaluated at the numeric saddle") {
  const auto model = make_model(2, {1.0});
  const auto series = g_saddle_series(model, 8);
  for (double ax : {1e2, 1e3, 1e4}) {
    const double z = z_plus_value(model, -ax);
    const std::complex<double> direct =
        2.0 * std::complex<double>(0, 1) * g_eval(model, z, -ax) * std::pow(ax, 5.0 / 4.0);
    CHECK(std::abs(direct.imag()) < 1e-12 * std::abs(direct));
    CHECK(direct.real() == doctest::Approx(evaluate(series, 1.0 / ax)).epsilon(1e-9));
  }
}

TEST_CASE("PuiseuxSeries power closes within truncation") {
  // (1 + e)^{1/2} squared returns 1 + e to the truncation order.
  PuiseuxSeries<double> s(Rational(1, 2), Rational(4));
  s.add_term(Rational(0), 1.0);
  s.add_term(Rational(1), 1.0);
  const auto root = s.pow(Rational(1, 2));
  const auto back = root * root;
  CHECK(back.coefficient(Rational(0)) == doctest::Approx(1.0));
  CHECK(back.coefficient(Rational(1)) == doctest::Approx(1.0));
  for (int k = 3; k <= 8; ++k) CHECK(std::abs(back.coefficient(Rational(k, 2))) < 1e-15);
  CHECK_THROWS_AS(s.add_term(Rational(1, 3), 1.0), DimensionError);
}
