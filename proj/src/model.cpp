#include "hoairy/model.hpp"

#include <cmath>
#include <sstream>

#include "hoairy/errors.hpp"

namespace hoairy {

ModelSpec::ModelSpec(int n, std::vector<double> tau) : n_(n), tau_(std::move(tau)) {
  if (n_ < 1) throw DomainError("ModelSpec: n must be >= 1");
  if (tau_.size() != static_cast<std::size_t>(n_ - 1))
    throw DimensionError("ModelSpec: expected " + std::to_string(n_ - 1) + " tau values, got " +
                         std::to_string(tau_.size()));
}

ModelSpec make_model(int n, std::vector<double> tau) { return ModelSpec(n, std::move(tau)); }

bool ModelSpec::is_monomial() const {
  for (double t : tau_)
    if (t != 0.0) return false;
  return true;
}

double ModelSpec::phase_coefficient(int k) const {
  if (k == n_) return 1.0;
  if (k < 1 || k > n_) return 0.0;
  return tau_[static_cast<std::size_t>(k - 1)];
}

std::vector<double> ModelSpec::parameter_values(double slot0) const {
  std::vector<double> v;
  v.reserve(tau_.size() + 1);
  v.push_back(slot0);
  v.insert(v.end(), tau_.begin(), tau_.end());
  return v;
}

std::string ModelSpec::str() const {
  std::ostringstream os;
  os << "n=" << n_ << " tau=[";
  for (std::size_t i = 0; i < tau_.size(); ++i) os << (i ? "," : "") << tau_[i];
  os << "]";
  return os.str();
}

EvenPolynomial::EvenPolynomial(std::map<int, double> coeffs) {
  for (const auto& [e, c] : coeffs) {
    if (e % 2 != 0 || e < 0) throw DomainError("EvenPolynomial: odd or negative exponent");
    if (c != 0.0) coeffs_.emplace(e, c);
  }
}

double EvenPolynomial::coefficient(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? 0.0 : it->second;
}

double EvenPolynomial::operator()(double z) const {
  double sum = 0.0;
  for (const auto& [e, c] : coeffs_) sum += c * std::pow(z, e);
  return sum;
}

double EvenPolynomial::derivative(double z) const {
  double sum = 0.0;
  for (const auto& [e, c] : coeffs_)
    if (e > 0) sum += c * e * std::pow(z, e - 1);
  return sum;
}

std::complex<double> EvenPolynomial::operator()(std::complex<double> z) const {
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : coeffs_) sum += c * std::pow(z, e);
  return sum;
}

EvenPolynomial q_of_model(const ModelSpec& model) {
  const int n = model.n();
  std::map<int, double> c;
  c[2 * n] = 1.0;
  for (int j = 1; j < n; ++j) {
    const double sign = ((n + j) % 2 == 0) ? 1.0 : -1.0;
    c[2 * j] = sign * model.tau()[static_cast<std::size_t>(j - 1)];
  }
  return EvenPolynomial(std::move(c));
}

Poly q_coefficient_symbolic(int n, int j) {
  if (j == n) return Poly(1);
  const Rational sign((n + j) % 2 == 0 ? 1 : -1);
  return Poly::variable(j) * sign;
}

std::vector<std::string> parameter_names(int n, const std::string& slot0) {
  std::vector<std::string> names{slot0};
  for (int j = 1; j < n; ++j) names.push_back("tau" + std::to_string(j));
  return names;
}

}  // namespace hoairy
