#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hoairy/asymptotics.hpp"
#include "hoairy/errors.hpp"
#include "hoairy/expansions.hpp"
#include "hoairy/fredholm.hpp"

using namespace hoairy;

namespace {

constexpr double kPi = std::numbers::pi;
const ModelSpec kAiry = make_model(1, {});

Poly beta() { return Poly::variable(0); }
Poly tau(int j) { return Poly::variable(j); }

const SymbolicTerm* find_power(const std::vector<SymbolicTerm>& terms, Rational e) {
  for (const auto& t : terms)
    if (t.kind == TermKind::power && t.exponent == e) return &t;
  return nullptr;
}

const SymbolicTerm* find_kind(const std::vector<SymbolicTerm>& terms, TermKind kind) {
  for (const auto& t : terms)
    if (t.kind == kind) return &t;
  return nullptr;
}

}  // namespace

TEST_CASE("symbolic ln F assembly, n = 1") {
  const auto terms = logF_asym_symbolic(1);
  REQUIRE(terms.size() == 4);
  CHECK(find_power(terms, Rational(3, 2))->coefficient == beta() * Rational(-2, 3));
  CHECK(find_kind(terms, TermKind::log_abs_x)->coefficient == beta() * beta() * Rational(3, 8));
  CHECK(find_kind(terms, TermKind::log_constant)->log_argument == 8);
  CHECK(find_kind(terms, TermKind::log_barnes)->coefficient == Poly(1));
}

TEST_CASE("symbolic ln F assembly, n = 3 against the closed expansion") {
  const auto terms = logF_asym_symbolic(3);
  const Poly b = beta();
  CHECK(find_power(terms, Rational(7, 6))->coefficient == b * Rational(-6, 7));
  CHECK(find_power(terms, Rational(5, 6))->coefficient == -(b * tau(2)) * Rational(1, 5));
  CHECK(find_power(terms, Rational(1, 2))->coefficient ==
        -(b * Rational(1, 3)) * (tau(2) * tau(2) * Rational(1, 4) - tau(1)));
  CHECK(find_power(terms, Rational(1, 6))->coefficient ==
        -(b * tau(2) * Rational(1, 6)) * (tau(2) * tau(2) * Rational(7, 36) - tau(1)));
  CHECK(find_kind(terms, TermKind::log_abs_x)->coefficient == b * b * Rational(7, 24));
  CHECK(find_kind(terms, TermKind::log_constant)->log_argument == 24);
  CHECK(find_kind(terms, TermKind::log_constant)->coefficient == b * b * Rational(1, 4));
}

TEST_CASE("symbolic ln F assembly, n = 2 follows the residue coefficients") {
  const auto terms = logF_asym_symbolic(2);
  const Poly b = beta();
  CHECK(find_power(terms, Rational(5, 4))->coefficient == b * Rational(-4, 5));
  CHECK(find_power(terms, Rational(3, 4))->coefficient == -(b * tau(1)) * Rational(1, 3));
  // a_2 = tau_1^2/32, so the |x|^{1/4} coefficient is -beta tau_1^2/8.
  CHECK(find_power(terms, Rational(1, 4))->coefficient == -(b * tau(1) * tau(1)) * Rational(1, 8));
  CHECK(find_kind(terms, TermKind::log_abs_x)->coefficient == b * b * Rational(5, 16));
  // beta^2 ln 2 = (beta^2/4) ln 16.
  CHECK(find_kind(terms, TermKind::log_constant)->log_argument == 16);
  CHECK(find_kind(terms, TermKind::log_constant)->coefficient == b * b * Rational(1, 4));
}

TEST_CASE("logF_asym: zero deformation, term sums, domain") {
  const auto m2 = make_model(2, {1.0});
  const auto zero = logF_asym(m2, 0.0, -7.0);
  CHECK(zero.value == 0.0);
  const auto e = logF_asym(m2, 0.6, -9.0);
  double sum = 0.0;
  for (const auto& t : e.leading_terms) sum += t.value;
  CHECK(sum == e.value);
  CHECK(e.error_order == Rational(-1, 4));
  CHECK(e.leading_terms.size() == 6);
  CHECK_THROWS_AS(logF_asym(m2, 1.0, -9.0), DomainError);
  CHECK_THROWS_AS(logF_asym(m2, 0.5, 1.0), DomainError);

  // n = 1 closed form.
  const double b = -std::log1p(-0.25) / kPi;
  const double x = -11.0;
  const double expect = -2.0 * b / 3.0 * std::pow(11.0, 1.5) + 3.0 * b * b / 8.0 * std::log(11.0) +
                        b * b / 4.0 * std::log(8.0) + log_barnes_g_pair(b / 2.0);
  CHECK(logF_asym(kAiry, 0.5, x).value == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("q_asym_sub: envelope, phase and its derivative") {
  const auto m = make_model(3, {0.4, -0.7});
  const AsymParams p = subcritical_params(0.8, 3);
  const double x = -17.0;
  const auto e = q_asym_sub(m, p, x);
  const double envelope = std::sqrt(p.first) / (std::sqrt(3.0) * std::pow(17.0, 5.0 / 12.0));
  CHECK(e.value == doctest::Approx(envelope * std::cos(e.phase)).epsilon(1e-14));
  CHECK(e.leading_terms.front().value == e.value);
  CHECK(e.error_order == Rational(-7, 12));

  const double hstep = 1e-4;
  const double numeric = (phase_sub(m, p, 17.0 + hstep) - phase_sub(m, p, 17.0 - hstep)) / (2.0 * hstep);
  const double identity = saddle_phase_derivative(m, 17.0, 3) - 7.0 * p.first / 12.0 / 17.0;
  CHECK(numeric == doctest::Approx(identity).epsilon(1e-8));

  const AsymParams p1 = subcritical_params(0.5, 1);
  CHECK(phase_sub(kAiry, p1, 9.0) ==
        doctest::Approx(2.0 / 3.0 * 27.0 - 0.75 * p1.first * std::log(9.0) + p1.second).epsilon(1e-15));

  // Amplitude scales like sqrt(beta) as rho -> 0.
  const double small = std::abs(q_asym_sub(kAiry, 1e-4, -10.0).leading_terms.front().coefficient);
  const double b = -std::log1p(-1e-8) / kPi;
  CHECK(small <= std::sqrt(b) + 1e-18);
  CHECK_THROWS_AS(q_asym_sub(kAiry, 1.2, -10.0), DomainError);
}

TEST_CASE("q_asym_sub tracks q_extract for n = 2, tau_1 = 1 near x = -30") {
  const auto m = make_model(2, {1.0});
  double worst = 0.0;
  for (double x = -31.0; x <= -29.0; x += 0.25)
    worst = std::max(worst, std::abs(q_extract(m, 0.5, x) - std::abs(q_asym_sub(m, 0.5, x).value)));
  CHECK(worst < 0.05 * std::pow(30.0, -5.0 / 8.0));
}

TEST_CASE("supercritical evaluators") {
  const double rho = std::sqrt(2.0);
  const AsymParams p = supercritical_params(rho, 1);
  CHECK(std::abs(p.first) < 1e-15);
  CHECK(p.second == doctest::Approx(kPi / 2.0).epsilon(1e-14));
  const auto q = q_asym_super(kAiry, rho, -6.3);
  const double phase0 = 2.0 / 3.0 * std::pow(6.3, 1.5);
  CHECK(q.value == doctest::Approx(std::sqrt(6.3) / std::cos(phase0)).epsilon(1e-12));
  CHECK(q.error_order == Rational(-1));
  const auto d = dlogF_asym_super(kAiry, rho, -6.3);
  CHECK(d.value == doctest::Approx(-std::sqrt(6.3) / std::tan(q.phase)).epsilon(1e-12));
  CHECK(d.leading_terms[0].value + d.leading_terms[1].value == d.value);
  CHECK(dlogF_asym_super(make_model(2, {0.5}), 2.0, -6.3).error_order == Rational(-1, 4));

  // The phase sum runs to k = n + 1.
  const auto m2 = make_model(2, {1.0});
  const AsymParams p2 = supercritical_params(3.0, 2);
  const double ax = 12.0;
  const double direct = saddle_phase(m2, ax, 3) - 1.25 * p2.first * std::log(ax) + p2.second;
  CHECK(phase_super(m2, p2, ax) == direct);
  CHECK(saddle_phase(m2, ax, 3) != saddle_phase(m2, ax, 2));
}

TEST_CASE("near-pole guard") {
  const AsymParams p = supercritical_params(2.0, 1);
  // Solve phase(|x|) = 5 pi by bisection; phase is increasing for |x| > 2.
  double lo = 2.0, hi = 20.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (phase_super(kAiry, p, mid) < 5.0 * kPi ? lo : hi) = mid;
  }
  CHECK_THROWS_AS(q_asym_super(kAiry, 2.0, -lo), NearPoleError);
  CHECK_THROWS_AS(dlogF_asym_super(kAiry, 2.0, -lo), NearPoleError);
  CHECK_NOTHROW(q_asym_super(kAiry, 2.0, -lo - 0.01));
  CHECK_THROWS_AS(q_asym_super(kAiry, 0.5, -lo), DomainError);
}

TEST_CASE("pole_estimate") {
  // kappa = 0: the ln m / m term vanishes.
  const double rho = std::sqrt(2.0);
  const AsymParams p = supercritical_params(rho, 2);
  const double r = 5.0 / 4.0;
  for (int m : {3, 17}) {
    const double expect =
        -std::pow(r * kPi, 0.8) * std::pow(m, 0.8) * (1.0 + (p.first * std::log(r * kPi) - p.second) / (r * kPi) / m);
    CHECK(pole_estimate(2, rho, m) == doctest::Approx(expect).epsilon(1e-12));
  }
  for (int n : {1, 2, 3}) {
    const double lead = std::pow((2.0 * n + 1.0) / (2.0 * n) * kPi, 2.0 * n / (2.0 * n + 1.0));
    const double ratio = pole_estimate(n, 2.0, 100000) / (-lead * std::pow(100000.0, 2.0 * n / (2.0 * n + 1.0)));
    CHECK(std::abs(ratio - 1.0) < 1e-3);
  }
  // Consecutive estimates advance the phase by pi.
  const auto flat = make_model(2, {0.0});
  const AsymParams p2 = supercritical_params(2.0, 2);
  for (int m = 10; m <= 100; m += 30) {
    const double step = phase_super(flat, p2, -pole_estimate(2, 2.0, m + 1)) - phase_super(flat, p2, -pole_estimate(2, 2.0, m));
    CHECK(step == doctest::Approx(kPi).epsilon(1e-3));
  }
  CHECK_THROWS_AS(pole_estimate(1, 2.0, 0), DomainError);
}

TEST_CASE("q_asym_super changes sign once between consecutive estimated poles") {
  for (int m = 3; m <= 8; ++m) {
    const double a = pole_estimate(1, 2.0, m + 1), b = pole_estimate(1, 2.0, m);
    int changes = 0;
    double prev = 0.0;
    for (int i = 1; i < 400; ++i) {
      const double x = a + (b - a) * i / 400.0;
      double v;
      try {
        v = q_asym_super(kAiry, 2.0, x).value;
      } catch (const NearPoleError&) {
        continue;
      }
      if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++changes;
      prev = v;
    }
    CHECK(changes == 1);
  }
}

TEST_CASE("counting asymptotics") {
  const auto c = mu_sigma(kAiry, 9.0);
  CHECK(c.mu == doctest::Approx(2.0 / (3.0 * kPi) * 27.0).epsilon(1e-15));
  CHECK(c.sigma2 == doctest::Approx(3.0 / (4.0 * kPi * kPi) * std::log(9.0)).epsilon(1e-15));
  CHECK(c.var_const == doctest::Approx((std::log(8.0) + 1.0 + euler_gamma()) / (2.0 * kPi * kPi)).epsilon(1e-15));
  double prev = -1.0;
  for (double x = 0.5; x < 20.0; x += 0.5) {
    const double mu = mu_sigma(make_model(3, {0.0, 0.0}), x).mu;
    CHECK(mu > prev);
    prev = mu;
  }
  CHECK_THROWS_AS(mu_sigma(kAiry, 0.0), DomainError);
}

TEST_CASE("total_integral_rhs") {
  CHECK(std::abs(total_integral_rhs(1e-6, 1)) < 1e-20);
  CHECK(total_integral_rhs(0.5, 1) < total_integral_rhs(0.5, 2));
  CHECK(total_integral_rhs(0.5, 2) < total_integral_rhs(0.5, 3));
  CHECK_THROWS_AS(total_integral_rhs(1.5, 1), DomainError);
}

TEST_CASE("clt_check") {
  CHECK(clt_check(kAiry, 8.0, 0.0) == 0.0);
  const double up = clt_check(kAiry, 10.0, 1.0);
  const double down = clt_check(kAiry, 10.0, -1.0);
  CHECK(std::abs(up - down) < 0.05 * std::abs(up));
  CHECK_THROWS_AS(clt_check(kAiry, 1.0, 1.0), DomainError);
}
