// Closed-form x -> -inf asymptotics of q_n and ln F_n, pole locations and
// counting statistics. All evaluators are pure.

#ifndef HOAIRY_ASYMPTOTICS_HPP_
#define HOAIRY_ASYMPTOTICS_HPP_

#include <limits>
#include <string>
#include <vector>

#include "hoairy/model.hpp"
#include "hoairy/multipoly.hpp"
#include "hoairy/rational.hpp"
#include "hoairy/special_functions.hpp"

namespace hoairy {

enum class TermKind {
  power,         // coefficient * |x|^exponent
  log_abs_x,     // coefficient * ln|x|
  log_constant,  // coefficient * ln(log_argument)
  log_barnes,    // coefficient * ln[G(1 + i beta/2) G(1 - i beta/2)]
};

struct AsymTerm {
  std::string label;
  TermKind kind = TermKind::power;
  Rational exponent;
  int log_argument = 1;
  double coefficient = 0.0;
  double value = 0.0;
};

struct AsymEvaluation {
  double value = 0.0;  // sum of leading_terms[i].value, in order
  double phase = std::numeric_limits<double>::quiet_NaN();
  std::vector<AsymTerm> leading_terms;
  Rational error_order;  // remainder is O(|x|^error_order)
};

/// q_n((-1)^{n+1} x) for 0 < rho < 1: sqrt(beta/n) |x|^{-(2n-1)/(4n)} cos(phase).
AsymEvaluation q_asym_sub(const ModelSpec& model, double rho, double x);
AsymEvaluation q_asym_sub(const ModelSpec& model, const AsymParams& params, double x);

/// sum_{k<=n} 2n a_k |x|^{(1+2(n-k))/(2n)}/(1+2(n-k)) - ((2n+1)/(4n)) beta ln|x| + phi.
double phase_sub(const ModelSpec& model, const AsymParams& params, double abs_x);

/// ln F_n(x; rho) for 0 <= rho < 1.
AsymEvaluation logF_asym(const ModelSpec& model, double rho, double x);

/// Symbolic form of the ln F expansion with coefficients in beta (Poly slot 0) and tau.
struct SymbolicTerm {
  TermKind kind = TermKind::power;
  Rational exponent;
  int log_argument = 1;
  Poly coefficient;
};
std::vector<SymbolicTerm> logF_asym_symbolic(int n);

/// Singular asymptotics for rho > 1. The phase sum runs to k = n + 1.
/// Throws NearPoleError when the phase is within `guard` of a multiple of pi.
AsymEvaluation q_asym_super(const ModelSpec& model, double rho, double x, double guard = 1e-3);
AsymEvaluation dlogF_asym_super(const ModelSpec& model, double rho, double x, double guard = 1e-3);

/// sum_{k<=n+1} 2n a_k |x|^{(1+2(n-k))/(2n)}/(1+2(n-k)) - ((2n+1)/(2n)) kappa ln|x| + varphi.
double phase_super(const ModelSpec& model, const AsymParams& params, double abs_x);

/// Approximate m-th real pole of q_n((-1)^{n+1} x) for rho > 1 and tau = 0.
double pole_estimate(int n, double rho, int m);

struct CountingAsymptotics {
  double mu = 0.0;
  double sigma2 = 0.0;
  double var_const = 0.0;  // (ln(8n) + 1 + gamma_E)/(2 pi^2)
};
CountingAsymptotics mu_sigma(const ModelSpec& model, double x);

/// (beta^2/4) ln(8n) + ln[G(1 + i beta/2) G(1 - i beta/2)].
double total_integral_rhs(double rho, int n);

/// ln E[exp(s (N - mu)/sigma)] - s^2/2, with the moment generating function from F_n(-x).
double clt_check(const ModelSpec& model, double x, double s);

}  // namespace hoairy

#endif  // HOAIRY_ASYMPTOTICS_HPP_
