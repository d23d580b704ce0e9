#include "hoairy/hierarchy.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace hoairy {

namespace {

using RationalDP = DifferentialPolynomial<Rational>;
using PolyDP = DifferentialPolynomial<Poly>;

}  // namespace

RationalDP lenard(int k) {
  if (k < 0) throw DomainError("lenard: k must be >= 0");
  static std::mutex mutex;
  static std::vector<RationalDP> memo{RationalDP::constant(Rational(1, 2), "h")};
  std::lock_guard lock(mutex);
  const RationalDP h = RationalDP::derivative_variable(0, "h");
  const RationalDP dh = RationalDP::derivative_variable(1, "h");
  while (static_cast<int>(memo.size()) <= k) {
    const RationalDP& prev = memo.back();
    const RationalDP d1 = prev.derivative();
    const RationalDP rhs = d1.derivative().derivative() + h * d1 * Rational(4) + dh * prev * Rational(2);
    memo.push_back(rhs.antiderivative());
  }
  return memo[static_cast<std::size_t>(k)];
}

PolyDP hierarchy_equation(int n) {
  if (n < 1) throw DomainError("hierarchy_equation: n must be >= 1");
  const PolyDP q = PolyDP::derivative_variable(0, "q");
  const PolyDP h_of_q = PolyDP::derivative_variable(1, "q") - q * q;

  // Jet images D^i (q' - q^2), enough for the highest Lenard order used.
  std::vector<PolyDP> images{h_of_q};
  auto lenard_in_q = [&](int k) {
    const PolyDP lk = coefficient_cast<Poly>(lenard(k));
    while (static_cast<int>(images.size()) <= lk.max_order()) images.push_back(images.back().derivative());
    return lk.compose(images);
  };
  auto d_plus_2q = [&](const PolyDP& p) { return p.derivative() + q * p * Poly(2); };

  PolyDP eq = d_plus_2q(lenard_in_q(n));
  for (int i = 1; i < n; ++i) eq = eq + d_plus_2q(lenard_in_q(i)) * Poly::variable(i);
  eq = eq - q * Poly::variable(0);
  return eq;
}

PolyDP hierarchy_equation(const ModelSpec& model) { return hierarchy_equation(model.n()); }

double hierarchy_residual(const ModelSpec& model, std::span<const double> q_jet, double x) {
  const auto n = static_cast<std::size_t>(model.n());
  if (q_jet.size() != 2 * n + 1)
    throw DimensionError("hierarchy_residual: jet must have 2n+1 = " + std::to_string(2 * n + 1) + " entries");
  static std::mutex mutex;
  static std::map<int, PolyDP> memo;
  PolyDP eq;
  {
    std::lock_guard lock(mutex);
    auto it = memo.find(model.n());
    if (it == memo.end()) it = memo.emplace(model.n(), hierarchy_equation(model.n())).first;
    eq = it->second;
  }
  const auto values = model.parameter_values(x);
  return eq.evaluate(q_jet, [&](const Poly& c) { return c.evaluate(values); });
}

}  // namespace hoairy
