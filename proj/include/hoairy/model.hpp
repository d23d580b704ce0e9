// Model definition: hierarchy order n and deformation parameters tau_1..tau_{n-1}.

#ifndef HOAIRY_MODEL_HPP_
#define HOAIRY_MODEL_HPP_

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hoairy/multipoly.hpp"

namespace hoairy {

/// The pair (n, tau) that fixes the odd phase polynomial
/// P(z) = z^{2n+1}/(2n+1) + sum_k tau_k z^{2k+1}/(2k+1).
class ModelSpec {
 public:
  ModelSpec(int n, std::vector<double> tau);

  int n() const { return n_; }
  std::span<const double> tau() const { return tau_; }
  bool is_monomial() const;

  /// Coefficient of z^{2k+1}/(2k+1) in P, k = 1..n (the k = n entry is 1).
  double phase_coefficient(int k) const;

  /// Values vector for Poly::evaluate: slot 0 = `slot0`, slot j = tau_j.
  std::vector<double> parameter_values(double slot0 = 0.0) const;

  std::string str() const;
  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

 private:
  int n_;
  std::vector<double> tau_;
};

/// Throws DimensionError when tau.size() != n-1 and DomainError when n < 1.
ModelSpec make_model(int n, std::vector<double> tau);

template <typename Scalar>
Scalar phase_polynomial(const ModelSpec& model, const Scalar& z) {
  Scalar sum(0);
  const Scalar z2 = z * z;
  Scalar zp = z;
  for (int k = 0; k <= model.n(); ++k) {
    if (k > 0) {
      zp *= z2;
      sum += model.phase_coefficient(k) / static_cast<double>(2 * k + 1) * zp;
    }
  }
  return sum;
}

/// Even polynomial z^{2n} + sum_j c_j z^{2j}; stores exponent -> coefficient.
class EvenPolynomial {
 public:
  explicit EvenPolynomial(std::map<int, double> coeffs);

  const std::map<int, double>& coeffs() const { return coeffs_; }
  int degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
  double coefficient(int exponent) const;

  double operator()(double z) const;
  double derivative(double z) const;
  std::complex<double> operator()(std::complex<double> z) const;

 private:
  std::map<int, double> coeffs_;
};

/// Q(z) = z^{2n} + sum_j (-1)^{n+j} tau_j z^{2j}.
EvenPolynomial q_of_model(const ModelSpec& model);

/// Symbolic coefficient (-1)^{n+j} tau_j of z^{2j} in Q, as a Poly in tau.
Poly q_coefficient_symbolic(int n, int j);

/// Names used when printing Poly values: slot 0 = `slot0`, then tau1, tau2, ...
std::vector<std::string> parameter_names(int n, const std::string& slot0 = "beta");

}  // namespace hoairy

#endif  // HOAIRY_MODEL_HPP_
