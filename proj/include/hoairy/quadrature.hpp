// Gauss-Legendre rules and Chebyshev interpolation helpers.

#ifndef HOAIRY_QUADRATURE_HPP_
#define HOAIRY_QUADRATURE_HPP_

#include <Eigen/Dense>
#include <memory>

namespace hoairy {

struct GaussLegendreRule {
  Eigen::VectorXd nodes;    // increasing, in (-1, 1)
  Eigen::VectorXd weights;  // positive, sum 2
};

/// Cached N-point rule on [-1, 1]. Thread-safe; the returned rule is immutable.
std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n);

/// Rule mapped affinely to (a, b).
GaussLegendreRule gauss_legendre(int n, double a, double b);

/// Chebyshev points of the first kind cos(pi (k + 1/2) / (deg + 1)), k = 0..deg.
Eigen::VectorXd chebyshev_points(int degree);

/// Coefficients c_j of sum_j c_j T_j interpolating `values` at chebyshev_points(degree).
Eigen::VectorXd chebyshev_coefficients(const Eigen::VectorXd& values);

/// Clenshaw evaluation of sum_j c_j T_j(u), u in [-1, 1].
double chebyshev_eval(const double* coeffs, int count, double u);

}  // namespace hoairy

#endif  // HOAIRY_QUADRATURE_HPP_
