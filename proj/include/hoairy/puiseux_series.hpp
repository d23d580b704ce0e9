// Truncated Puiseux series in a small variable eps with rational exponents.
//
// The coefficient type is either double or Poly (exact rational polynomial in
// the tau parameters). Exponents are kept as exact rationals and must be
// multiples of the series step; terms above the truncation order are dropped.

#ifndef HOAIRY_PUISEUX_SERIES_HPP_
#define HOAIRY_PUISEUX_SERIES_HPP_

#include <cmath>
#include <map>
#include <span>
#include <utility>

#include "hoairy/errors.hpp"
#include "hoairy/multipoly.hpp"
#include "hoairy/rational.hpp"

namespace hoairy {

template <typename C>
struct CoeffTraits;

template <>
struct CoeffTraits<double> {
  static double from_rational(const Rational& r) { return r.to_double(); }
  static bool is_zero(double c) { return c == 0.0; }
  static double inverse(double c) { return 1.0 / c; }
  static double power(double c, const Rational& p) { return std::pow(c, p.to_double()); }
};

template <>
struct CoeffTraits<Poly> {
  static Poly from_rational(const Rational& r) { return Poly(r); }
  static bool is_zero(const Poly& c) { return c.is_zero(); }
  static Poly inverse(const Poly& c) {
    if (!c.is_constant() || c.is_zero())
      throw DomainError("PuiseuxSeries: symbolic leading coefficient must be a nonzero constant");
    return Poly(Rational(1) / c.constant());
  }
  static Poly power(const Poly& c, const Rational& p) {
    if (c == Poly(1)) return Poly(1);
    if (c.is_constant() && p.is_integer()) return Poly(pow(c.constant(), static_cast<int>(p.num())));
    throw DomainError("PuiseuxSeries: fractional power of a non-unit symbolic coefficient");
  }
};

template <typename C>
class PuiseuxSeries {
 public:
  using Traits = CoeffTraits<C>;

  PuiseuxSeries(Rational step, Rational order) : step_(step), order_(order) {
    if (!(step > Rational(0))) throw DomainError("PuiseuxSeries: step must be positive");
  }

  static PuiseuxSeries monomial(C coeff, Rational exponent, Rational step, Rational order) {
    PuiseuxSeries s(step, order);
    s.add_term(exponent, std::move(coeff));
    return s;
  }

  const Rational& step() const { return step_; }
  const Rational& order() const { return order_; }
  const std::map<Rational, C>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  C coefficient(const Rational& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Traits::from_rational(Rational(0)) : it->second;
  }

  Rational lowest_exponent() const {
    if (terms_.empty()) return order_;
    return terms_.begin()->first;
  }

  void add_term(const Rational& exponent, C coeff) {
    if (!(exponent / step_).is_integer())
      throw DimensionError("PuiseuxSeries: exponent " + exponent.str() + " not a multiple of step " +
                           step_.str());
    if (exponent > order_ || Traits::is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
      it->second = it->second + coeff;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  PuiseuxSeries truncated(const Rational& order) const {
    PuiseuxSeries out(step_, order < order_ ? order : order_);
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
  }

  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    check_step(a, b);
    PuiseuxSeries out(a.step_, a.order_ < b.order_ ? a.order_ : b.order_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, c);
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return a + b * Traits::from_rational(Rational(-1));
  }

  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    check_step(a, b);
    const Rational oa = a.order_ + b.lowest_exponent();
    const Rational ob = b.order_ + a.lowest_exponent();
    PuiseuxSeries out(a.step_, oa < ob ? oa : ob);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        if (ea + eb > out.order_) break;
        out.add_term(ea + eb, ca * cb);
      }
    }
    return out;
  }

  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const C& scalar) {
    PuiseuxSeries out(a.step_, a.order_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, c * scalar);
    return out;
  }

  /// Multiplies by eps^shift; order shifts with it.
  PuiseuxSeries shifted(const Rational& shift) const {
    PuiseuxSeries out(step_, order_ + shift);
    for (const auto& [e, c] : terms_) out.add_term(e + shift, c);
    return out;
  }

  /// S^p via binomial expansion about the leading term.
  PuiseuxSeries pow(const Rational& p) const {
    if (terms_.empty()) throw DomainError("PuiseuxSeries: power of an empty series");
    const Rational e0 = lowest_exponent();
    const C& lead = terms_.begin()->second;
    const C inv = Traits::inverse(lead);
    // U = S / (lead * eps^e0) - 1, all exponents >= step.
    PuiseuxSeries unit = shifted(-e0) * inv;
    unit.add_term(Rational(0), Traits::from_rational(Rational(-1)));
    const Rational rel_order = unit.order_;

    PuiseuxSeries sum = monomial(Traits::from_rational(Rational(1)), Rational(0), step_, rel_order);
    PuiseuxSeries power = sum;
    const Rational u_low = unit.empty() ? rel_order + step_ : unit.lowest_exponent();
    for (int m = 1; Rational(m) * u_low <= rel_order; ++m) {
      power = power * unit;
      sum = sum + power * Traits::from_rational(binomial(p, m));
    }
    const Rational shift = e0 * p;
    if (!(shift / step_).is_integer())
      throw DimensionError("PuiseuxSeries: power shifts exponents off the step lattice");
    return sum.shifted(shift) * Traits::power(lead, p);
  }

 private:
  static void check_step(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    if (a.step_ != b.step_) throw DimensionError("PuiseuxSeries: mismatched steps");
  }

  Rational step_;
  Rational order_;
  std::map<Rational, C> terms_;
};

inline double evaluate(const PuiseuxSeries<double>& s, double eps) {
  double sum = 0.0;
  for (const auto& [e, c] : s.terms()) sum += c * std::pow(eps, e.to_double());
  return sum;
}

inline double evaluate(const PuiseuxSeries<Poly>& s, double eps, std::span<const double> values) {
  double sum = 0.0;
  for (const auto& [e, c] : s.terms()) sum += c.evaluate(values) * std::pow(eps, e.to_double());
  return sum;
}

/// Numeric image of a symbolic series at the given parameter values.
inline PuiseuxSeries<double> numeric(const PuiseuxSeries<Poly>& s, std::span<const double> values) {
  PuiseuxSeries<double> out(s.step(), s.order());
  for (const auto& [e, c] : s.terms()) out.add_term(e, c.evaluate(values));
  return out;
}

}  // namespace hoairy

#endif  // HOAIRY_PUISEUX_SERIES_HPP_
