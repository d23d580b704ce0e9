// Nystrom discretization of K_n on (x, inf) and the determinant F_n(x; rho).

#ifndef HOAIRY_FREDHOLM_HPP_
#define HOAIRY_FREDHOLM_HPP_

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "hoairy/model.hpp"
#include "hoairy/special_functions.hpp"

namespace hoairy {

/// Piecewise Chebyshev interpolant of A_n on [lower, upper]; zero above upper.
class WaveTable {
 public:
  WaveTable(const ModelSpec& model, double lower, int degree = 20);

  double operator()(double t) const;
  double lower() const { return breaks_.front(); }
  double upper() const { return breaks_.back(); }
  std::size_t panel_count() const { return breaks_.size() - 1; }

  /// K(t, t) = int_t^inf A^2.
  double square_tail(double t) const;

 private:
  double square_integral(std::size_t panel, double from) const;

  int stride_;
  std::vector<double> breaks_;
  std::vector<double> coeffs_;
  std::vector<double> tail_;
};

/// Shared table covering at least [lower, inf). Thread-safe; grows on demand.
std::shared_ptr<const WaveTable> wave_table(const ModelSpec& model, double lower);

/// Oscillation scale used for panel widths: max of the real wavenumber and |t|^{1/(2n)}.
double local_scale(const ModelSpec& model, double t);

/// K_n(x, y) = int_0^inf A(x+s) A(y+s) ds.
double kernel_eval(const ModelSpec& model, double x, double y);
CheckedValue kernel_eval_checked(const ModelSpec& model, double x, double y, double tolerance = 1e-12);

/// Raw double contour integral over u = c + r e^{+-i theta}, v = -c - r e^{-+i theta},
/// theta = n pi/(2n+1), both contours oriented upward. Slow; for testing.
double kernel_double_contour(const ModelSpec& model, double x, double y, int nodes_per_panel = 16);

struct QuadratureScheme {
  double x = 0.0;
  int node_count = 0;
  double truncation_length = 0.0;
  Eigen::VectorXd nodes;    // in (x, x + L)
  Eigen::VectorXd weights;  // sum to L
};

QuadratureScheme make_scheme(double x, int node_count, double truncation_length);

/// Same offsets and weights moved to start at x.
QuadratureScheme shift_scheme(const QuadratureScheme& scheme, double x);

/// 200 for x >= -20, else ceil(200 (|x|/20)^{(2n+1)/(4n)}).
int default_node_count(const ModelSpec& model, double x);

/// Smallest L (to 1%) with |rho2| K(x+L, x+L) < 1e-16.
double choose_truncation(const ModelSpec& model, double rho2, double x);

QuadratureScheme default_scheme(const ModelSpec& model, double rho2, double x);

struct DiscretizedOperator {
  Eigen::MatrixXd matrix;  // sqrt(w_i) K(t_i, t_j) sqrt(w_j)
  ModelSpec model;
  double x;
  QuadratureScheme scheme;
};

/// Symmetrized Nystrom matrix, assembled as H H with H_ij = sqrt(w_i) A(t_i + s_j) sqrt(w_j).
DiscretizedOperator discretize(const ModelSpec& model, double x, const QuadratureScheme& scheme);

struct DeterminantResult {
  double value = 1.0;
  double log_value = 0.0;  // ln |F|
  int sign = 1;
  double rho = 0.0;
  double rho2 = 0.0;
  double x = 0.0;
  int node_count = 0;
  double truncation_length = 0.0;
  double truncation_residual = 0.0;  // |rho2| K(x+L, x+L)
  double self_consistency_delta = 0.0;
};

/// det(I - rho^2 M); rho enters only through rho^2.
DeterminantResult fredholm_det(const ModelSpec& model, double rho, double x, const QuadratureScheme& scheme);
DeterminantResult fredholm_det(const ModelSpec& model, double rho, double x);

/// Same determinant parametrized by rho2 directly (rho2 may be negative).
DeterminantResult fredholm_det_rho2(const ModelSpec& model, double rho2, double x, const QuadratureScheme& scheme);

/// Called after each determinant evaluation with a nonzero rho2 (diagnostics, e.g. convergence audits).
/// An empty function removes the observer.
using DeterminantObserver =
    std::function<void(const ModelSpec& model, const QuadratureScheme& scheme, const DeterminantResult& result)>;
void set_determinant_observer(DeterminantObserver observer);

/// Adds self_consistency_delta = |ln|F|(2N) - ln|F|(N)|.
DeterminantResult fredholm_det_checked(const ModelSpec& model, double rho, double x);

/// ln |F| on a list of points sharing one scheme shape (offsets/weights of `shape`).
std::vector<DeterminantResult> fredholm_det_grid(const ModelSpec& model, double rho2, const std::vector<double>& xs,
                                                 const QuadratureScheme& shape);

struct LogDerivatives {
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Five-point stencils with step h and one Richardson level (h/2).
LogDerivatives log_f_derivs(const ModelSpec& model, double rho, double x, double h = 1e-2);

/// Same stencil on ln|F|; for rho > 1, where F may be negative. Throws only if F changes sign.
LogDerivatives log_abs_f_derivs(const ModelSpec& model, double rho, double x, double h = 1e-2);

/// |q_n((-1)^{n+1} x; rho)| = sqrt(-d^2/dx^2 ln F).
double q_extract(const ModelSpec& model, double rho, double x);

/// Grid version: derivatives at x_lo + k h/2 ... x_hi from one uniform ln F scan.
struct DerivativeScan {
  std::vector<double> x;
  std::vector<double> log_f;
  std::vector<double> d1;
  std::vector<double> d2;
};
DerivativeScan log_f_derivs_scan(const ModelSpec& model, double rho, double x_lo, double x_hi, double h = 1e-2);

/// Sign changes of F in the window, refined to 1e-8.
std::vector<double> f_zeros(const ModelSpec& model, double rho, std::pair<double, double> window, double step = 0.01);

/// Mean and variance of the counting function from gamma-derivatives of ln F(-x).
std::pair<double, double> counting_moments(const ModelSpec& model, double x, double step = 1e-3);

/// tr K and tr(K - K^2) on (-x, inf), from the discretized operator.
std::pair<double, double> counting_traces(const ModelSpec& model, double x);

/// ln F(x; rho) + beta sum_k 2n a_k |x|^{(1+2(n-k))/(2n)}/(1+2(n-k)) - ((2n+1) beta^2/(8n)) ln|x|.
double total_integral_lhs(const ModelSpec& model, double rho, double x);

}  // namespace hoairy

#endif  // HOAIRY_FREDHOLM_HPP_
