#include "hoairy/special_functions.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hoairy/errors.hpp"
#include "hoairy/expansions.hpp"
#include "hoairy/quadrature.hpp"

namespace hoairy {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Psi(s) = sum_j c_j s^{2j+1}/(2j+1) + x s and its first two derivatives,
// where c_j are the coefficients of Q.
class Phase {
 public:
  Phase(const ModelSpec& model, double x) : x_(x) {
    const EvenPolynomial q = q_of_model(model);
    c_.assign(static_cast<std::size_t>(model.n()) + 1, 0.0);
    for (const auto& [e, c] : q.coeffs()) c_[static_cast<std::size_t>(e / 2)] = c;
  }

  cplx value(cplx s) const {
    const cplx s2 = s * s;
    cplx acc = 0.0;
    for (std::size_t j = c_.size(); j-- > 0;) acc = acc * s2 + c_[j] / static_cast<double>(2 * j + 1);
    return s * (acc + x_);
  }
  cplx d1(cplx s) const {
    const cplx s2 = s * s;
    cplx acc = 0.0;
    for (std::size_t j = c_.size(); j-- > 0;) acc = acc * s2 + c_[j];
    return acc + x_;
  }
  cplx d2(cplx s) const {
    const cplx s2 = s * s;
    cplx acc = 0.0;
    for (std::size_t j = c_.size(); j-- > 1;) acc = acc * s2 + c_[j] * static_cast<double>(2 * j);
    return acc * s;
  }
  const std::vector<double>& q_coeffs() const { return c_; }

 private:
  std::vector<double> c_;
  double x_;
};

// Complex saddle of Psi in the open first quadrant or on the positive imaginary
// axis, closest to the real axis in argument. Used when Q + x has no real root.
cplx complex_saddle(const Phase& phase, double x) {
  const auto& c = phase.q_coeffs();
  const int n = static_cast<int>(c.size()) - 1;
  // Monic polynomial in w = s^2: w^n + ... + c_1 w + x.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int j = 0; j < n; ++j) companion(j, n - 1) = -(j == 0 ? x : c[static_cast<std::size_t>(j)]);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion.cast<cplx>());
  cplx best(0.0, 0.0);
  double best_arg = 10.0;
  for (int k = 0; k < n; ++k) {
    cplx s = std::sqrt(solver.eigenvalues()[k]);
    if (s.imag() < 0.0) s = -s;
    if (s.imag() <= 1e-14 * std::abs(s)) continue;
    const double a = std::arg(s);
    if (a < best_arg) best_arg = a, best = s;
  }
  return best;
}

struct PanelWalker {
  const Phase& phase;
  const ContourOptions& opt;
  std::vector<ContourSegment>& out;
  double min_im_psi;
  double last_im_psi = 0.0;

  double step(cplx at, cplx dir) const {
    constexpr double kMaxStep = 1.0;
    const double p1 = std::abs(phase.d1(at));
    const double p2 = std::abs(phase.d2(at));
    double h = kMaxStep;
    if (p1 > 0.0) h = std::min(h, opt.max_phase_per_panel / p1);
    if (p2 > 0.0) h = std::min(h, std::sqrt(2.0 * opt.max_phase_per_panel / p2));
    while (h * std::abs(phase.d1(at + dir * h)) > opt.max_phase_per_panel) h *= 0.5;
    return h;
  }

  void finite(cplx start, cplx dir, double length) {
    double t = 0.0;
    while (t < length) {
      if (out.size() > 200000) throw EvaluationError("contour: panel budget exhausted");
      const double h = std::min(step(start + dir * t, dir), length - t);
      out.push_back({start + dir * t, dir, h, opt.nodes_per_panel});
      t += h;
      min_im_psi = std::min(min_im_psi, phase.value(start + dir * t).imag());
    }
  }

  void ray(cplx start, cplx dir) {
    double t = 0.0;
    for (;;) {
      if (out.size() > 200000) throw EvaluationError("contour: panel budget exhausted");
      const double h = step(start + dir * t, dir);
      out.push_back({start + dir * t, dir, h, opt.nodes_per_panel});
      t += h;
      const cplx end = start + dir * t;
      const double im = phase.value(end).imag();
      min_im_psi = std::min(min_im_psi, im);
      const bool rising = (phase.d1(end) * dir).imag() > 0.0;
      if (rising && im - min_im_psi >= opt.decay_cutoff) {
        last_im_psi = im;
        return;
      }
    }
  }
};

}  // namespace

ContourPlan make_contour_plan(const ModelSpec& model, double x, const ContourOptions& options) {
  const Phase phase(model, x);
  ContourPlan plan;
  plan.ray_angle = kPi / (2.0 * (2 * model.n() + 1));
  const cplx ray_dir = std::polar(1.0, plan.ray_angle);
  PanelWalker walker{phase, options, plan.segments, std::numeric_limits<double>::infinity()};

  const double s_star = largest_q_root(model, -x);
  if (s_star >= 0.0) {
    plan.saddle_points.push_back(s_star);
    plan.anchor = s_star;
    walker.min_im_psi = 0.0;
    walker.finite(0.0, 1.0, s_star);
  } else {
    const cplx saddle = complex_saddle(phase, x);
    plan.anchor = saddle;
    // The leg 0 -> i Im(saddle) is omitted: exp(i Psi) is real there and the
    // contribution to the real part vanishes.
    const cplx corner(0.0, saddle.imag());
    walker.min_im_psi = phase.value(corner).imag();
    walker.finite(corner, 1.0, saddle.real());
  }
  walker.min_im_psi = std::min(walker.min_im_psi, phase.value(plan.anchor).imag());
  walker.ray(plan.anchor, ray_dir);
  plan.truncation_threshold = std::exp(-(walker.last_im_psi - walker.min_im_psi));
  return plan;
}

double integrate_plan(const ModelSpec& model, double x, const ContourPlan& plan) {
  const Phase phase(model, x);
  const cplx i(0.0, 1.0);
  double sum = 0.0;
  for (const auto& seg : plan.segments) {
    const auto rule = gauss_legendre(seg.node_count);
    const double half = 0.5 * seg.length;
    cplx part = 0.0;
    for (int k = 0; k < seg.node_count; ++k) {
      const cplx s = seg.start + seg.direction * (half * (rule->nodes[k] + 1.0));
      part += rule->weights[k] * std::exp(i * phase.value(s));
    }
    sum += (part * seg.direction * half).real();
  }
  return sum / kPi;
}

double wave_a(const ModelSpec& model, double x) { return integrate_plan(model, x, make_contour_plan(model, x)); }

CheckedValue wave_a_checked(const ModelSpec& model, double x, double tolerance) {
  ContourPlan plan = make_contour_plan(model, x);
  const double coarse = integrate_plan(model, x, plan);
  for (auto& seg : plan.segments) seg.node_count *= 2;
  const double fine = integrate_plan(model, x, plan);
  CheckedValue out;
  out.value = fine;
  out.error_estimate = std::abs(fine - coarse);
  out.precision_warning = out.error_estimate > tolerance;
  return out;
}

double airy_hi(int n, double x) {
  return wave_a(make_model(n, std::vector<double>(static_cast<std::size_t>(std::max(n - 1, 0)), 0.0)), x);
}

CheckedValue airy_hi_checked(int n, double x, double tolerance) {
  return wave_a_checked(make_model(n, std::vector<double>(static_cast<std::size_t>(std::max(n - 1, 0)), 0.0)), x,
                        tolerance);
}

double wave_number(const ModelSpec& model, double x) { return std::max(0.0, largest_q_root(model, -x)); }

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw DomainError("log_gamma: pole at a non-positive integer");
  cplx shift = 0.0;
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  static constexpr double kBernoulli[] = {1.0 / 6,  -1.0 / 30, 1.0 / 42,       -1.0 / 30,
                                          5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510};
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx power = inv;
  for (int k = 1; k <= 8; ++k) {
    series += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

double arg_gamma(std::complex<double> z) { return log_gamma(z).imag(); }

namespace {

// sum_{k=1}^{N} [k ln(1 + t/k^2) - t/k] plus an Euler-Maclaurin tail.
double barnes_partial(double t, int count) {
  double sum = 0.0;
  for (int k = 1; k <= count; ++k) {
    const double kk = k;
    sum += kk * std::log1p(t / (kk * kk)) - t / kk;
  }
  const double u = count;
  const double r = t / (u * u);
  const double f = u * std::log1p(r) - t / u;
  const double df = std::log1p(r) - 2.0 * t / (u * u + t) + t / (u * u);
  const double integral = 0.5 * t - 0.5 * (u * u + t) * std::log1p(r);
  const double d3f = 30.0 * t * t / std::pow(u, 6);
  return sum + integral - 0.5 * f - df / 12.0 + d3f / 720.0;
}

}  // namespace

double log_barnes_g_pair(double y) {
  const double t = y * y;
  if (t == 0.0) return 0.0;
  int count = 64 + static_cast<int>(std::ceil(8.0 * std::abs(y)));
  double prev = barnes_partial(t, count);
  for (int iter = 0; iter < 20; ++iter) {
    count *= 2;
    const double next = barnes_partial(t, count);
    if (std::abs(next - prev) < 1e-13 * std::max(1.0, std::abs(next))) return (1.0 + euler_gamma()) * t + next;
    prev = next;
  }
  throw EvaluationError("log_barnes_g_pair: product did not converge");
}

double barnes_g_pair(double y) { return std::exp(log_barnes_g_pair(y)); }

double euler_gamma() { return 0.5772156649015329; }

AsymParams subcritical_params(double rho, int n) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("subcritical_params: need 0 < rho < 1");
  if (n < 1) throw DomainError("subcritical_params: n must be >= 1");
  const double beta = -std::log1p(-rho * rho) / kPi;
  const double phi = -0.5 * beta * std::log(8.0 * n) + arg_gamma(cplx(0.0, 0.5 * beta)) + 0.25 * kPi;
  return {AsymMode::sub, beta, phi, rho, n};
}

AsymParams supercritical_params(double rho, int n) {
  if (!(rho > 1.0)) throw DomainError("supercritical_params: need rho > 1");
  if (n < 1) throw DomainError("supercritical_params: n must be >= 1");
  const double kappa = -std::log(rho * rho - 1.0) / (2.0 * kPi);
  const double varphi = -kappa * std::log(8.0 * n) + arg_gamma(cplx(0.5, kappa)) + 0.5 * kPi;
  return {AsymMode::super, kappa, varphi, rho, n};
}

}  // namespace hoairy
