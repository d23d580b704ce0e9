#include "hoairy/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "hoairy/errors.hpp"
#include "hoairy/expansions.hpp"
#include "hoairy/fredholm.hpp"

namespace hoairy {

namespace {

constexpr double kPi = std::numbers::pi;

std::string power_label(const Rational& e) {
  if (e.is_integer()) return "|x|^" + e.str();
  return "|x|^(" + e.str() + ")";
}

AsymTerm power_term(const Rational& exponent, double coefficient, double abs_x) {
  return {power_label(exponent), TermKind::power, exponent, 1, coefficient,
          coefficient * std::pow(abs_x, exponent.to_double())};
}

AsymEvaluation assemble(std::vector<AsymTerm> terms, Rational error_order, double phase) {
  AsymEvaluation out;
  for (const auto& t : terms) out.value += t.value;
  out.leading_terms = std::move(terms);
  out.error_order = error_order;
  out.phase = phase;
  return out;
}

bool flat_tau(const ModelSpec& model) {
  for (double t : model.tau())
    if (t != 0.0) return false;
  return true;
}

void require_negative(double x, const char* who) {
  if (!(x < 0.0)) throw DomainError(std::string(who) + ": x must be negative");
}

void guard_phase(double phase, double guard, const char* who) {
  const double r = std::remainder(phase, kPi);
  if (std::abs(r) < guard) throw NearPoleError(std::string(who) + ": phase within guard of a pole");
}

}  // namespace

double phase_sub(const ModelSpec& model, const AsymParams& params, double abs_x) {
  const int n = model.n();
  return saddle_phase(model, abs_x, n) - (2.0 * n + 1.0) / (4.0 * n) * params.first * std::log(abs_x) + params.second;
}

AsymEvaluation q_asym_sub(const ModelSpec& model, const AsymParams& params, double x) {
  require_negative(x, "q_asym_sub");
  if (params.mode != AsymMode::sub) throw DomainError("q_asym_sub: need subcritical parameters");
  const int n = model.n();
  const double abs_x = -x;
  const double phase = phase_sub(model, params, abs_x);
  const Rational exponent(-(2 * n - 1), 4 * n);
  std::vector<AsymTerm> terms{power_term(exponent, std::sqrt(params.first / n) * std::cos(phase), abs_x)};
  terms.front().label += "*cos(phase)";
  return assemble(std::move(terms), Rational(-(2 * n + 1), 4 * n), phase);
}

AsymEvaluation q_asym_sub(const ModelSpec& model, double rho, double x) {
  return q_asym_sub(model, subcritical_params(rho, model.n()), x);
}

std::vector<SymbolicTerm> logF_asym_symbolic(int n) {
  if (n < 1) throw DomainError("logF_asym_symbolic: n must be >= 1");
  const Poly beta = Poly::variable(0);
  const auto a = a_coeffs_symbolic(n, n);
  std::vector<SymbolicTerm> terms;
  for (int k = 0; k <= n; ++k) {
    const int odd = 1 + 2 * (n - k);
    Poly c = -(beta * a[static_cast<std::size_t>(k)]) * Rational(2 * n, odd);
    if (c.is_zero()) continue;
    terms.push_back({TermKind::power, Rational(odd, 2 * n), 1, std::move(c)});
  }
  const Poly beta2 = beta * beta;
  terms.push_back({TermKind::log_abs_x, Rational(0), 1, beta2 * Rational(2 * n + 1, 8 * n)});
  terms.push_back({TermKind::log_constant, Rational(0), 8 * n, beta2 * Rational(1, 4)});
  terms.push_back({TermKind::log_barnes, Rational(0), 1, Poly(1)});
  return terms;
}

AsymEvaluation logF_asym(const ModelSpec& model, double rho, double x) {
  require_negative(x, "logF_asym");
  if (!(std::abs(rho) < 1.0)) throw DomainError("logF_asym: need |rho| < 1");
  const int n = model.n();
  const double beta = -std::log1p(-rho * rho) / kPi;
  const double abs_x = -x;
  std::vector<double> values(model.tau().begin(), model.tau().end());
  values.insert(values.begin(), beta);

  std::vector<AsymTerm> terms;
  for (const auto& s : logF_asym_symbolic(n)) {
    const double c = s.coefficient.evaluate(values);
    switch (s.kind) {
      case TermKind::power:
        terms.push_back(power_term(s.exponent, c, abs_x));
        break;
      case TermKind::log_abs_x:
        terms.push_back({"ln|x|", s.kind, s.exponent, 1, c, c * std::log(abs_x)});
        break;
      case TermKind::log_constant:
        terms.push_back({"ln(" + std::to_string(s.log_argument) + ")", s.kind, s.exponent, s.log_argument, c,
                         c * std::log(static_cast<double>(s.log_argument))});
        break;
      case TermKind::log_barnes:
        terms.push_back({"ln C0", s.kind, s.exponent, 1, c, c * log_barnes_g_pair(0.5 * beta)});
        break;
    }
  }
  return assemble(std::move(terms), Rational(-1, 2 * n), std::numeric_limits<double>::quiet_NaN());
}

double phase_super(const ModelSpec& model, const AsymParams& params, double abs_x) {
  const int n = model.n();
  return saddle_phase(model, abs_x, n + 1) - (2.0 * n + 1.0) / (2.0 * n) * params.first * std::log(abs_x) +
         params.second;
}

AsymEvaluation q_asym_super(const ModelSpec& model, double rho, double x, double guard) {
  require_negative(x, "q_asym_super");
  const int n = model.n();
  const AsymParams p = supercritical_params(rho, n);
  const double phase = phase_super(model, p, -x);
  guard_phase(phase, guard, "q_asym_super");
  std::vector<AsymTerm> terms{power_term(Rational(1, 2 * n), 1.0 / std::sin(phase), -x)};
  terms.front().label += "/sin(phase)";
  return assemble(std::move(terms), flat_tau(model) ? Rational(-1) : Rational(-1, 2 * n), phase);
}

AsymEvaluation dlogF_asym_super(const ModelSpec& model, double rho, double x, double guard) {
  require_negative(x, "dlogF_asym_super");
  const int n = model.n();
  const AsymParams p = supercritical_params(rho, n);
  const double phase = phase_super(model, p, -x);
  guard_phase(phase, guard, "dlogF_asym_super");
  const Rational e(1, 2 * n);
  std::vector<AsymTerm> terms{power_term(e, 2.0 * p.first, -x), power_term(e, -1.0 / std::tan(phase), -x)};
  terms.back().label += "*cot(phase)";
  return assemble(std::move(terms), flat_tau(model) ? Rational(-1) : Rational(-1, 2 * n), phase);
}

double pole_estimate(int n, double rho, int m) {
  if (m < 1) throw DomainError("pole_estimate: m must be >= 1");
  const AsymParams p = supercritical_params(rho, n);
  const double kappa = p.first;
  const double varphi = p.second;
  const double r = (2.0 * n + 1.0) / (2.0 * n);
  const double mm = m;
  const double bracket = 1.0 + kappa / (r * kPi) * std::log(mm) / mm +
                         (kappa * std::log(r * kPi) - varphi) / (r * kPi) / mm;
  return -std::pow(r * kPi, 1.0 / r) * std::pow(mm, 1.0 / r) * bracket;
}

CountingAsymptotics mu_sigma(const ModelSpec& model, double x) {
  if (!(x > 0.0)) throw DomainError("mu_sigma: x must be positive");
  const int n = model.n();
  CountingAsymptotics out;
  out.mu = saddle_phase(model, x, n) / kPi;
  out.sigma2 = (2.0 * n + 1.0) / (4.0 * n * kPi * kPi) * std::log(x);
  out.var_const = (std::log(8.0 * n) + 1.0 + euler_gamma()) / (2.0 * kPi * kPi);
  return out;
}

double total_integral_rhs(double rho, int n) {
  const double beta = subcritical_params(rho, n).first;
  return 0.25 * beta * beta * std::log(8.0 * n) + log_barnes_g_pair(0.5 * beta);
}

double clt_check(const ModelSpec& model, double x, double s) {
  const CountingAsymptotics c = mu_sigma(model, x);
  if (!(c.sigma2 > 0.0)) throw DomainError("clt_check: sigma(x) must be positive");
  if (s == 0.0) return 0.0;
  const double sigma = std::sqrt(c.sigma2);
  const double gamma = -s / (2.0 * kPi * sigma);
  const double rho2 = -std::expm1(-2.0 * kPi * gamma);
  const auto det = fredholm_det_rho2(model, rho2, -x, default_scheme(model, rho2, -x));
  if (det.sign <= 0) throw EvaluationError("clt_check: non-positive generating function");
  return det.log_value - s * c.mu / sigma - 0.5 * s * s;
}

}  // namespace hoairy
