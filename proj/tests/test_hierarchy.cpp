#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hoairy/errors.hpp"
#include "hoairy/hierarchy.hpp"
#include "oracles.hpp"

using namespace hoairy;

namespace {

using RDP = DifferentialPolynomial<Rational>;
using PDP = DifferentialPolynomial<Poly>;

PDP qd(int order) { return PDP::derivative_variable(order, "q"); }

}  // namespace

TEST_CASE("lenard low orders") {
  const RDP h = RDP::derivative_variable(0, "h");
  CHECK(lenard(0) == RDP::constant(Rational(1, 2), "h"));
  CHECK(lenard(1) == h);
  CHECK(lenard(2) == RDP::derivative_variable(2, "h") + h * h * Rational(3));
  CHECK_THROWS_AS(lenard(-1), DomainError);
}

TEST_CASE("lenard antidifferentiation stays exact through k = 6") {
  for (int k = 0; k <= 6; ++k) {
    const auto lk = lenard(k);
    CHECK(lk.max_order() == (k == 0 ? -1 : 2 * k - 2));
    // The recursion holds on the nose.
    if (k > 0) {
      const RDP h = RDP::derivative_variable(0, "h");
      const RDP prev = lenard(k - 1);
      const RDP d1 = prev.derivative();
      const RDP rhs = d1.derivative().derivative() + h * d1 * Rational(4) +
                      RDP::derivative_variable(1, "h") * prev * Rational(2);
      CHECK(lk.derivative() == rhs);
    }
    // L_k 0 = 0 for k >= 1: no constant term.
    if (k > 0) CHECK(lk.coefficient({}).is_zero());
  }
}

TEST_CASE("antiderivative rejects non-exact input") {
  const RDP h = RDP::derivative_variable(0, "h");
  CHECK_THROWS_AS((h * h).antiderivative(), InternalConsistencyError);
  CHECK_THROWS_AS((RDP::derivative_variable(1, "h") * RDP::derivative_variable(1, "h")).antiderivative(),
                  InternalConsistencyError);
}

TEST_CASE("hierarchy member n = 1 is Painleve II") {
  const PDP expected = qd(2) - qd(0) * qd(0) * qd(0) * Poly(2) - qd(0) * Poly::variable(0);
  CHECK(hierarchy_equation(1) == expected);
}

TEST_CASE("hierarchy member n = 2") {
  const PDP q = qd(0);
  const PDP q1 = qd(1);
  const PDP q2 = qd(2);
  const Poly t = Poly::variable(1);
  const PDP expected = qd(4) - q * q1 * q1 * Poly(10) - q * q * q2 * Poly(10) + q * q * q * q * q * Poly(6) +
                       (q2 - q * q * q * Poly(2)) * t - q * Poly::variable(0);
  CHECK(hierarchy_equation(2) == expected);
  CHECK(hierarchy_equation(make_model(2, {0.5})) == expected);
}

TEST_CASE("higher members have the expected leading structure") {
  for (int n = 1; n <= 4; ++n) {
    const auto eq = hierarchy_equation(n);
    CHECK(eq.max_order() == 2 * n);
    std::vector<int> top(static_cast<std::size_t>(2 * n + 1), 0);
    top.back() = 1;
    CHECK(eq.coefficient(top) == Poly(1));
    CHECK(eq.coefficient({1}) == Poly::variable(0) * Rational(-1));
  }
}

TEST_CASE("hierarchy_residual examples") {
  const auto m1 = make_model(1, {});
  const std::vector<double> zero(3, 0.0);
  CHECK(hierarchy_residual(m1, zero, 3.7) == 0.0);
  const std::vector<double> jet{1.0, 0.0, 0.0};
  CHECK(hierarchy_residual(m1, jet, 0.0) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(hierarchy_residual(m1, std::vector<double>(4, 0.0), 0.0), DimensionError);

  const auto m2 = make_model(2, {0.0});
  CHECK(hierarchy_residual(m2, std::vector<double>(5, 0.0), -1.0) == 0.0);
  CHECK_THROWS_AS(hierarchy_residual(m2, jet, 0.0), DimensionError);
}

TEST_CASE("hierarchy_residual vanishes on an integrated Painleve II solution") {
  const double x0 = 8.0;
  const double h = 1.0 / 1024;
  const auto q = oracle::solve_pii(1.0, x0, -4.0, h);
  const auto m1 = make_model(1, {});
  double worst = 0.0;
  for (double x : {6.0, 2.0, 0.0, -1.5, -3.0}) {
    const auto i = static_cast<std::size_t>(std::lround((x0 - x) / h));
    // Five-point stencils with step d = 4h; the grid runs toward decreasing x.
    const std::size_t s = 4;
    const double d = static_cast<double>(s) * h;
    const double fp1 = q[i - s], fp2 = q[i - 2 * s], fm1 = q[i + s], fm2 = q[i + 2 * s];
    const double d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * d);
    const double d2 = (-fp2 + 16 * fp1 - 30 * q[i] + 16 * fm1 - fm2) / (12 * d * d);
    const std::vector<double> jet{q[i], d1, d2};
    worst = std::max(worst, std::abs(hierarchy_residual(m1, jet, x)));
  }
  CHECK(worst < 1e-6);
}
