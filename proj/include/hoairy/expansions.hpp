// Residue coefficients a_k, b_k and the saddle-point expansions built on them.
//
// All series here are in eps = |x|^{-1}. The symbolic variants return
// coefficients as exact polynomials in tau (Poly slot j = tau_j); the numeric
// variants evaluate those polynomials at the model's tau values.

#ifndef HOAIRY_EXPANSIONS_HPP_
#define HOAIRY_EXPANSIONS_HPP_

#include <complex>
#include <vector>

#include "hoairy/model.hpp"
#include "hoairy/multipoly.hpp"
#include "hoairy/puiseux_series.hpp"

namespace hoairy {

/// a_0..a_kmax with a_0 = 1 and a_k = Res_{z=inf} Q^{(2k-1)/(2n)} / (2k-1).
/// Res_{z=inf} f is minus the z^{-1} coefficient of the expansion at infinity.
std::vector<Poly> a_coeffs_symbolic(int n, int kmax);
std::vector<double> a_coeffs(const ModelSpec& model, int kmax);

/// b_0..b_kmax with b_0 = 0 and b_k = Res_{z=inf} Q^{k/(2n)} / k.
std::vector<Poly> b_coeffs_symbolic(int n, int kmax);
std::vector<double> b_coeffs(const ModelSpec& model, int kmax);

/// Positive saddle z+ of g: the root of Q(2 z |x|^{1/(2n)}) = |x| on the
/// increasing branch of Q. Throws DomainError when |x| is too small for the
/// branch to be isolated.
double z_plus_value(const ModelSpec& model, double x);

/// Largest positive root s of Q(s) = level, or a negative value when none exists.
double largest_q_root(const ModelSpec& model, double level);

/// z+ = 1/2 + (1/2) sum_{k=1}^{kmax} a_k eps^{k/n}.
PuiseuxSeries<Poly> z_plus_series_symbolic(int n, int kmax);
PuiseuxSeries<double> z_plus_series(const ModelSpec& model, int kmax);

/// Rescaled phase g(z) at x < 0.
std::complex<double> g_eval(const ModelSpec& model, std::complex<double> z, double x);

/// 2i g(z+) |x|^{(2n+1)/(2n)} = sum_k 2n a_k/(1+2(n-k)) eps^{-(1+2(n-k))/(2n)}.
PuiseuxSeries<Poly> g_saddle_series_symbolic(int n, int kmax);
PuiseuxSeries<double> g_saddle_series(const ModelSpec& model, int kmax);

/// Same series obtained by substituting the z+ series into the polynomial g.
PuiseuxSeries<Poly> g_saddle_series_by_substitution(int n, int kmax);

/// sum_{k=0}^{kmax} 2n a_k |x|^{(1+2(n-k))/(2n)} / (1+2(n-k)) evaluated at |x| = abs_x.
double saddle_phase(const ModelSpec& model, double abs_x, int kmax);

/// d/d|x| of saddle_phase.
double saddle_phase_derivative(const ModelSpec& model, double abs_x, int kmax);

}  // namespace hoairy

#endif  // HOAIRY_EXPANSIONS_HPP_
