// Lenard operators and the Painleve II hierarchy as exact differential polynomials.

#ifndef HOAIRY_HIERARCHY_HPP_
#define HOAIRY_HIERARCHY_HPP_

#include <span>

#include "hoairy/differential_polynomial.hpp"
#include "hoairy/model.hpp"

namespace hoairy {

/// L_k h, from D L_{k+1} h = (D^3 + 4h D + 2h') L_k h with L_0 h = 1/2 and L_k 0 = 0.
DifferentialPolynomial<Rational> lenard(int k);

/// Left-hand side minus x q of the n-th hierarchy member,
///   (D + 2q) L_n[q' - q^2] + sum_i tau_i (D + 2q) L_i[q' - q^2] - x q,
/// with coefficients in Poly slots 0 = x and j = tau_j.
DifferentialPolynomial<Poly> hierarchy_equation(int n);
DifferentialPolynomial<Poly> hierarchy_equation(const ModelSpec& model);

/// Numeric residual of the hierarchy at jet (q, q', ..., q^{(2n)}) and x.
double hierarchy_residual(const ModelSpec& model, std::span<const double> q_jet, double x);

}  // namespace hoairy

#endif  // HOAIRY_HIERARCHY_HPP_
