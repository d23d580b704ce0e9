// Differential polynomials in one dependent variable u and its derivatives.
//
// A monomial is an exponent vector over (u, u', u'', ...). Coefficients are
// treated as constants by the total derivative D.

#ifndef HOAIRY_DIFFERENTIAL_POLYNOMIAL_HPP_
#define HOAIRY_DIFFERENTIAL_POLYNOMIAL_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hoairy/errors.hpp"
#include "hoairy/multipoly.hpp"
#include "hoairy/rational.hpp"

namespace hoairy {

inline bool coeff_is_zero(const Rational& r) { return r.is_zero(); }
inline bool coeff_is_zero(const Poly& p) { return p.is_zero(); }

template <typename C>
class DifferentialPolynomial {
 public:
  using Monomial = std::vector<int>;

  DifferentialPolynomial() = default;
  explicit DifferentialPolynomial(std::string variable) : variable_(std::move(variable)) {}

  static DifferentialPolynomial constant(const C& c, std::string variable = "u") {
    DifferentialPolynomial p(std::move(variable));
    p.add_term({}, c);
    return p;
  }

  /// The jet variable u^{(order)}.
  static DifferentialPolynomial derivative_variable(int order, std::string variable = "u") {
    DifferentialPolynomial p(std::move(variable));
    Monomial m(static_cast<std::size_t>(order) + 1, 0);
    m.back() = 1;
    p.add_term(std::move(m), C(Rational(1)));
    return p;
  }

  const std::map<Monomial, C>& terms() const { return terms_; }
  const std::string& variable() const { return variable_; }
  bool is_zero() const { return terms_.empty(); }

  int max_order() const {
    int order = -1;
    for (const auto& [m, c] : terms_) order = std::max(order, static_cast<int>(m.size()) - 1);
    return order;
  }

  C coefficient(Monomial m) const {
    trim(m);
    auto it = terms_.find(m);
    return it == terms_.end() ? C() : it->second;
  }

  void add_term(Monomial m, const C& c) {
    if (coeff_is_zero(c)) return;
    trim(m);
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second = it->second + c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  friend DifferentialPolynomial operator+(const DifferentialPolynomial& a, const DifferentialPolynomial& b) {
    DifferentialPolynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }

  friend DifferentialPolynomial operator-(const DifferentialPolynomial& a, const DifferentialPolynomial& b) {
    DifferentialPolynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, C() - c);
    return out;
  }

  friend DifferentialPolynomial operator*(const DifferentialPolynomial& a, const DifferentialPolynomial& b) {
    DifferentialPolynomial out(a.variable_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(std::max(ma.size(), mb.size()), 0);
        for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
        for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
        out.add_term(std::move(m), ca * cb);
      }
    }
    return out;
  }

  friend DifferentialPolynomial operator*(const DifferentialPolynomial& a, const C& s) {
    DifferentialPolynomial out(a.variable_);
    for (const auto& [m, c] : a.terms_) out.add_term(m, c * s);
    return out;
  }

  friend bool operator==(const DifferentialPolynomial& a, const DifferentialPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  /// Total derivative D: u^{(i)} -> u^{(i+1)}, product rule.
  DifferentialPolynomial derivative() const {
    DifferentialPolynomial out(variable_);
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        Monomial next = m;
        next[i] -= 1;
        if (next.size() == i + 1) next.push_back(0);
        next[i + 1] += 1;
        out.add_term(std::move(next), c * C(Rational(m[i])));
      }
    }
    return out;
  }

  /// Substitutes u^{(i)} -> images[i]; images must cover max_order().
  DifferentialPolynomial compose(std::span<const DifferentialPolynomial> images) const {
    if (static_cast<int>(images.size()) <= max_order())
      throw DimensionError("DifferentialPolynomial::compose: not enough jet images");
    const std::string var = images.empty() ? variable_ : images.front().variable_;
    DifferentialPolynomial out(var);
    for (const auto& [m, c] : terms_) {
      DifferentialPolynomial term = constant(c, var);
      for (std::size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < m[i]; ++e) term = term * images[i];
      out = out + term;
    }
    return out;
  }

  /// R with D R = *this and no constant term. Throws InternalConsistencyError
  /// when *this is not an exact derivative.
  DifferentialPolynomial antiderivative() const {
    DifferentialPolynomial rest = *this;
    DifferentialPolynomial result(variable_);
    while (!rest.is_zero()) {
      const int top = rest.max_order();
      if (top <= 0)
        throw InternalConsistencyError("antiderivative: remainder " + rest.str() + " is not a total derivative");
      const auto t = static_cast<std::size_t>(top);
      // rest = A * u^{(top)} + B with A, B free of u^{(top)}; exactness needs linearity.
      DifferentialPolynomial primitive(variable_);
      for (const auto& [m, c] : rest.terms_) {
        if (m.size() != t + 1) continue;
        if (m[t] != 1)
          throw InternalConsistencyError("antiderivative: nonlinear in the highest derivative of " + rest.str());
        Monomial lowered(m.begin(), m.end() - 1);
        if (lowered.size() < t) lowered.resize(t, 0);
        const int e = lowered[t - 1];
        lowered[t - 1] = e + 1;
        primitive.add_term(std::move(lowered), c * C(Rational(1, e + 1)));
      }
      result = result + primitive;
      rest = rest - primitive.derivative();
      if (rest.max_order() >= top)
        throw InternalConsistencyError("antiderivative: failed to lower the order of " + rest.str());
    }
    return result;
  }

  template <typename CoeffEval>
  double evaluate(std::span<const double> jet, CoeffEval&& coeff_value) const {
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
      double term = coeff_value(c);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (i >= jet.size()) throw DimensionError("DifferentialPolynomial::evaluate: jet too short");
        term *= std::pow(jet[i], m[i]);
      }
      sum += term;
    }
    return sum;
  }

  std::string str(std::span<const std::string> coeff_names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << coeff_string(c, coeff_names) << ")";
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        os << "*" << variable_ << std::string(i, '\'');
        if (m[i] != 1) os << "^" << m[i];
      }
    }
    return os.str();
  }

 private:
  static void trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
  }
  static std::string coeff_string(const Rational& r, std::span<const std::string>) { return r.str(); }
  static std::string coeff_string(const Poly& p, std::span<const std::string> names) { return p.str(names); }

  std::string variable_ = "u";
  std::map<Monomial, C> terms_;
};

template <typename To, typename From>
DifferentialPolynomial<To> coefficient_cast(const DifferentialPolynomial<From>& p) {
  DifferentialPolynomial<To> out(p.variable());
  for (const auto& [m, c] : p.terms()) out.add_term(m, To(c));
  return out;
}

}  // namespace hoairy

#endif  // HOAIRY_DIFFERENTIAL_POLYNOMIAL_HPP_
