#include "hoairy/multipoly.hpp"

#include <cmath>
#include <sstream>

namespace hoairy {

namespace {

void trim(Poly::Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

}  // namespace

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(int index, int power) {
  Monomial m(static_cast<std::size_t>(index) + 1, 0);
  m[static_cast<std::size_t>(index)] = power;
  trim(m);
  Poly p;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Poly::constant() const { return coefficient({}); }

Rational Poly::coefficient(const Monomial& m) const {
  Monomial key = m;
  trim(key);
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree_in(int index) const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    if (static_cast<std::size_t>(index) < m.size()) d = std::max(d, m[static_cast<std::size_t>(index)]);
  }
  return d;
}

void Poly::add_term(Monomial m, const Rational& c) {
  if (c.is_zero()) return;
  trim(m);
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Poly::Monomial m(std::max(ma.size(), mb.size()), 0);
      for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& r) {
  if (r.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= r;
  return *this;
}

Poly& Poly::operator/=(const Rational& r) {
  for (auto& [m, c] : terms_) c /= r;
  return *this;
}

double Poly::evaluate(std::span<const double> values) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = c.to_double();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      const double v = i < values.size() ? values[i] : 0.0;
      term *= std::pow(v, m[i]);
    }
    sum += term;
  }
  return sum;
}

std::string Poly::str(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational coef = c;
    if (!first) {
      os << (coef < Rational(0) ? " - " : " + ");
      if (coef < Rational(0)) coef = -coef;
    } else if (coef < Rational(0)) {
      os << "-";
      coef = -coef;
    }
    first = false;
    const bool unit = coef == Rational(1);
    bool wrote = false;
    if (!unit || m.empty()) {
      os << coef;
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << (i < names.size() ? names[i] : "v" + std::to_string(i));
      if (m[i] != 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace hoairy
