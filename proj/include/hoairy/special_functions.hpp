// Higher-order Airy functions, the deformed wave function A_n, complex
// log-Gamma, the Barnes G pair and the connection parameters.

#ifndef HOAIRY_SPECIAL_FUNCTIONS_HPP_
#define HOAIRY_SPECIAL_FUNCTIONS_HPP_

#include <complex>
#include <vector>

#include "hoairy/model.hpp"

namespace hoairy {

/// One straight Gauss-Legendre panel s = start + direction * t, t in [0, length].
struct ContourSegment {
  std::complex<double> start;
  std::complex<double> direction;  // unit modulus
  double length;
  int node_count;
};

/// Path for A(x) = (1/pi) Re int_0^inf exp(i Psi(s)) ds, where
/// Psi(s) = int_0^s (Q(t) + x) dt. Pieces on the imaginary axis contribute
/// nothing to the real part and are omitted.
struct ContourPlan {
  double ray_angle = 0.0;
  std::vector<double> saddle_points;  // real saddles s* with Q(s*) = -x, or empty
  std::complex<double> anchor;        // point where the decaying ray starts
  std::vector<ContourSegment> segments;
  double truncation_threshold = 0.0;  // |integrand| at the last node, relative to its peak
};

struct ContourOptions {
  int nodes_per_panel = 16;
  double max_phase_per_panel = 6.0;
  double decay_cutoff = 40.0;  // stop once Im Psi has risen this much above its minimum
};

ContourPlan make_contour_plan(const ModelSpec& model, double x, const ContourOptions& options = {});

/// (1/pi) Re sum over the plan's nodes.
double integrate_plan(const ModelSpec& model, double x, const ContourPlan& plan);

/// A value with the change under node doubling as its error estimate.
struct CheckedValue {
  double value = 0.0;
  double error_estimate = 0.0;
  bool precision_warning = false;
};

/// Ai_{2n+1}(x) = (1/pi) int_0^inf cos(s^{2n+1}/(2n+1) + x s) ds.
double airy_hi(int n, double x);
CheckedValue airy_hi_checked(int n, double x, double tolerance = 1e-12);

/// A_n(x) = (1/pi) int_0^inf cos(Psi(s)) ds with Psi' = Q + x; equals airy_hi when tau = 0.
double wave_a(const ModelSpec& model, double x);
CheckedValue wave_a_checked(const ModelSpec& model, double x, double tolerance = 1e-12);

/// Local oscillation wavenumber of A_n at x: the largest real root of Q(s) = -x, or 0.
double wave_number(const ModelSpec& model, double x);

/// Principal branch of ln Gamma(z), analytic off the non-positive real axis.
std::complex<double> log_gamma(std::complex<double> z);

/// Im ln Gamma(z), continuous along the imaginary axis and Re z = 1/2.
double arg_gamma(std::complex<double> z);

/// ln[G(1+iy) G(1-iy)].
double log_barnes_g_pair(double y);
double barnes_g_pair(double y);

double euler_gamma();

enum class AsymMode { sub, super };

/// Connection constants: (beta, phi) for 0 < rho < 1, (kappa, varphi) for rho > 1.
struct AsymParams {
  AsymMode mode;
  double first;
  double second;
  double rho;
  int n;
};

/// beta = -ln(1 - rho^2)/pi, phi = -(beta/2) ln(8n) + arg Gamma(i beta/2) + pi/4.
AsymParams subcritical_params(double rho, int n);

/// kappa = -ln(rho^2 - 1)/(2 pi), varphi = -kappa ln(8n) + arg Gamma(1/2 + i kappa) + pi/2.
AsymParams supercritical_params(double rho, int n);

}  // namespace hoairy

#endif  // HOAIRY_SPECIAL_FUNCTIONS_HPP_
