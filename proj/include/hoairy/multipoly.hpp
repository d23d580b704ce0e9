// Sparse multivariate polynomials with exact rational coefficients.
//
// Variables are addressed by index. Across hoairy the convention is that
// index j >= 1 is the deformation parameter tau_j, and index 0 is a free
// slot used for beta (asymptotic assemblies) or x (hierarchy equations).

#ifndef HOAIRY_MULTIPOLY_HPP_
#define HOAIRY_MULTIPOLY_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "hoairy/rational.hpp"

namespace hoairy {

class Poly {
 public:
  /// Exponent vector with trailing zeros trimmed; empty vector is the unit monomial.
  using Monomial = std::vector<int>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT: constants convert implicitly
  Poly(std::int64_t c) : Poly(Rational(c)) {}  // NOLINT

  static Poly variable(int index, int power = 1);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  Rational constant() const;
  /// Coefficient of an exact monomial.
  Rational coefficient(const Monomial& m) const;
  int degree_in(int index) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& r);
  Poly& operator/=(const Rational& r);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& r) { return a *= r; }
  friend Poly operator*(const Rational& r, Poly a) { return a *= r; }
  friend Poly operator/(Poly a, const Rational& r) { return a /= r; }
  friend bool operator==(const Poly& a, const Poly& b) = default;

  /// Numeric evaluation; missing trailing values are treated as zero.
  double evaluate(std::span<const double> values) const;

  /// Human-readable form, e.g. "3/8*tau1^2 - beta". Unnamed indices print as v<i>.
  std::string str(std::span<const std::string> names = {}) const;

 private:
  void add_term(Monomial m, const Rational& c);

  std::map<Monomial, Rational> terms_;
};

}  // namespace hoairy

#endif  // HOAIRY_MULTIPOLY_HPP_
