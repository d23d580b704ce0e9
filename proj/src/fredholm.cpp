#include "hoairy/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "hoairy/errors.hpp"
#include "hoairy/expansions.hpp"
#include "hoairy/quadrature.hpp"

namespace hoairy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTailLevel = 1e-24;
constexpr double kTruncationLevel = 1e-16;

double max_abs_wave(const ModelSpec& model, double t) {
  double m = 0.0;
  for (int k = 0; k <= 4; ++k) m = std::max(m, std::abs(wave_a(model, t + 0.25 * k)));
  return m;
}

double panel_width(const ModelSpec& model, double a) {
  double w = std::min(1.0, 2.5 / local_scale(model, a));
  w = std::min(w, 2.5 / local_scale(model, a + w));
  return w;
}

}  // namespace

double local_scale(const ModelSpec& model, double t) {
  return std::max({wave_number(model, t), std::pow(std::abs(t), 1.0 / (2.0 * model.n())), 1e-3});
}

WaveTable::WaveTable(const ModelSpec& model, double lower, int degree) : stride_(degree + 1) {
  double upper = std::max(0.0, std::ceil(lower));
  while (max_abs_wave(model, upper) > kTailLevel) {
    upper += 1.0;
    if (upper > 1e3) throw EvaluationError("WaveTable: wave function does not decay");
  }
  const Eigen::VectorXd u = chebyshev_points(degree);
  breaks_.push_back(lower);
  Eigen::VectorXd values(stride_);
  while (breaks_.back() < upper) {
    const double a = breaks_.back();
    const double b = std::min(upper, a + panel_width(model, a));
    for (int k = 0; k < stride_; ++k) values[k] = wave_a(model, 0.5 * (a + b) + 0.5 * (b - a) * u[k]);
    const Eigen::VectorXd c = chebyshev_coefficients(values);
    coeffs_.insert(coeffs_.end(), c.data(), c.data() + stride_);
    breaks_.push_back(b);
  }
  tail_.assign(breaks_.size(), 0.0);
  for (std::size_t p = panel_count(); p-- > 0;) tail_[p] = tail_[p + 1] + square_integral(p, breaks_[p]);
}

double WaveTable::square_integral(std::size_t p, double from) const {
  const auto rule = gauss_legendre(2 * stride_, from, breaks_[p + 1]);
  double sum = 0.0;
  for (int k = 0; k < rule.nodes.size(); ++k) {
    const double v = (*this)(rule.nodes[k]);
    sum += rule.weights[k] * v * v;
  }
  return sum;
}

double WaveTable::square_tail(double t) const {
  if (t >= breaks_.back()) return 0.0;
  if (t < breaks_.front()) throw DomainError("WaveTable: argument below table range");
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const auto p = static_cast<std::size_t>(it - breaks_.begin() - 1);
  return square_integral(p, t) + tail_[p + 1];
}

double WaveTable::operator()(double t) const {
  if (t >= breaks_.back()) return 0.0;
  if (t < breaks_.front()) throw DomainError("WaveTable: argument below table range");
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const auto p = static_cast<std::size_t>(it - breaks_.begin() - 1);
  const double a = breaks_[p];
  const double b = breaks_[p + 1];
  const double u = (2.0 * t - a - b) / (b - a);
  return chebyshev_eval(coeffs_.data() + p * static_cast<std::size_t>(stride_), stride_, u);
}

std::shared_ptr<const WaveTable> wave_table(const ModelSpec& model, double lower) {
  using Key = std::pair<int, std::vector<double>>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const WaveTable>> cache;
  const Key key{model.n(), std::vector<double>(model.tau().begin(), model.tau().end())};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end() && it->second->lower() <= lower) return it->second;
  double from = std::floor(lower) - 2.0;
  if (it != cache.end()) from = std::min(from, it->second->lower());
  auto table = std::make_shared<const WaveTable>(model, from);
  cache[key] = table;
  return table;
}

namespace {

double kernel_quadrature(const ModelSpec& model, double x, double y, int nodes_per_panel) {
  const auto table = wave_table(model, std::min(x, y));
  const double lo = std::min(x, y);
  const double span = table->upper() - std::max(x, y);
  if (span <= 0.0) return 0.0;
  const auto rule = gauss_legendre(nodes_per_panel);
  double sum = 0.0;
  double s = 0.0;
  while (s < span) {
    const double h = std::min(span - s, panel_width(model, lo + s));
    for (int k = 0; k < nodes_per_panel; ++k) {
      const double sk = s + 0.5 * h * (rule->nodes[k] + 1.0);
      sum += 0.5 * h * rule->weights[k] * ((*table)(x + sk) * (*table)(y + sk));
    }
    s += h;
  }
  return sum;
}

}  // namespace

double kernel_eval(const ModelSpec& model, double x, double y) { return kernel_quadrature(model, x, y, 16); }

CheckedValue kernel_eval_checked(const ModelSpec& model, double x, double y, double tolerance) {
  const double coarse = kernel_quadrature(model, x, y, 16);
  const double fine = kernel_quadrature(model, x, y, 32);
  return {fine, std::abs(fine - coarse), std::abs(fine - coarse) > tolerance};
}

double kernel_double_contour(const ModelSpec& model, double x, double y, int nodes_per_panel) {
  using cplx = std::complex<double>;
  const int n = model.n();
  const double sgn = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{n+1}
  const double theta = n * kPi / (2.0 * n + 1.0);
  const double c = 0.5;
  const cplx up = std::polar(1.0, theta);
  const cplx down = std::polar(1.0, -theta);
  auto fu = [&](cplx u) { return std::exp(sgn * phase_polynomial(model, u) - x * u); };
  auto fv = [&](cplx v) { return std::exp(-sgn * phase_polynomial(model, v) + y * v); };

  // Leg length: both factors below 1e-25 at the far end.
  double radius = 1.0;
  while (std::abs(fu(c + radius * up)) > 1e-25 || std::abs(fu(c + radius * down)) > 1e-25 ||
         std::abs(fv(-c - radius * up)) > 1e-25 || std::abs(fv(-c - radius * down)) > 1e-25)
    radius += 0.25;
  const int panels = static_cast<int>(std::ceil(radius / 0.2));
  const auto rule = gauss_legendre(nodes_per_panel);
  const double h = radius / panels;

  struct Node {
    cplx point;
    cplx weight;  // quadrature weight times dz/dr and orientation
  };
  std::vector<Node> us, vs;
  for (int p = 0; p < panels; ++p) {
    for (int k = 0; k < nodes_per_panel; ++k) {
      const double r = h * (p + 0.5 * (rule->nodes[k] + 1.0));
      const double w = 0.5 * h * rule->weights[k];
      // gamma_R upward: lower leg traversed inward, upper leg outward.
      const cplx u_up = c + r * up, u_dn = c + r * down;
      us.push_back({u_up, w * up * fu(u_up)});
      us.push_back({u_dn, -w * down * fu(u_dn)});
      // gamma_L upward: v = -c - r e^{-i theta} is the upper leg.
      const cplx v_up = -c - r * down, v_dn = -c - r * up;
      vs.push_back({v_up, -w * down * fv(v_up)});
      vs.push_back({v_dn, w * up * fv(v_dn)});
    }
  }
  cplx sum = 0.0;
  for (const auto& a : us) {
    cplx row = 0.0;
    for (const auto& b : vs) row += b.weight / (a.point - b.point);
    sum += a.weight * row;
  }
  return (-sum / (4.0 * kPi * kPi)).real();
}

QuadratureScheme make_scheme(double x, int node_count, double truncation_length) {
  if (node_count < 1 || node_count > 5000) throw DomainError("make_scheme: node_count must be in [1, 5000]");
  if (!(truncation_length > 0.0)) throw DomainError("make_scheme: truncation length must be positive");
  const auto rule = gauss_legendre(node_count, x, x + truncation_length);
  return {x, node_count, truncation_length, rule.nodes, rule.weights};
}

QuadratureScheme shift_scheme(const QuadratureScheme& scheme, double x) {
  QuadratureScheme out = scheme;
  out.nodes.array() += x - scheme.x;
  out.x = x;
  return out;
}

int default_node_count(const ModelSpec& model, double x) {
  if (x >= -20.0) return 200;
  const int n = model.n();
  return static_cast<int>(std::ceil(200.0 * std::pow(-x / 20.0, (2.0 * n + 1.0) / (4.0 * n))));
}

double choose_truncation(const ModelSpec& model, double rho2, double x) {
  const double scale = std::abs(rho2);
  if (scale == 0.0) return 1.0;
  const auto table = wave_table(model, x);
  auto ok = [&](double length) { return scale * table->square_tail(x + length) < kTruncationLevel; };
  double hi = 1.0;
  while (!ok(hi)) {
    hi *= 2.0;
    if (hi > 1e4) throw EvaluationError("choose_truncation: kernel diagonal does not decay");
  }
  if (hi == 1.0) return hi;
  double lo = 0.5 * hi;
  while (hi - lo > 0.01 * hi) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

QuadratureScheme default_scheme(const ModelSpec& model, double rho2, double x) {
  return make_scheme(x, default_node_count(model, x), choose_truncation(model, rho2, x));
}

DiscretizedOperator discretize(const ModelSpec& model, double x, const QuadratureScheme& scheme) {
  const int m = scheme.node_count;
  const auto table = wave_table(model, x);
  const Eigen::VectorXd sw = scheme.weights.cwiseSqrt();
  Eigen::MatrixXd h(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = j; i < m; ++i) {
      const double v = sw[i] * sw[j] * (*table)(scheme.nodes[i] + scheme.nodes[j] - x);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(m, m);
  k.selfadjointView<Eigen::Lower>().rankUpdate(h);
  k.triangularView<Eigen::StrictlyUpper>() = k.transpose();
  if (!k.allFinite()) throw EvaluationError("discretize: non-finite kernel entries");
  return {std::move(k), model, x, scheme};
}

namespace {

std::mutex observer_mutex;
std::shared_ptr<const DeterminantObserver> observer;

void notify(const ModelSpec& model, const QuadratureScheme& scheme, const DeterminantResult& r) {
  std::shared_ptr<const DeterminantObserver> f;
  {
    std::lock_guard lock(observer_mutex);
    f = observer;
  }
  if (f) (*f)(model, scheme, r);
}

}  // namespace

void set_determinant_observer(DeterminantObserver f) {
  std::lock_guard lock(observer_mutex);
  observer = f ? std::make_shared<const DeterminantObserver>(std::move(f)) : nullptr;
}

DeterminantResult fredholm_det_rho2(const ModelSpec& model, double rho2, double x, const QuadratureScheme& scheme) {
  DeterminantResult r;
  r.rho = std::sqrt(std::abs(rho2));
  r.rho2 = rho2;
  r.x = x;
  r.node_count = scheme.node_count;
  r.truncation_length = scheme.truncation_length;
  if (rho2 == 0.0) return r;
  const QuadratureScheme at_x = scheme.x == x ? scheme : shift_scheme(scheme, x);
  const DiscretizedOperator op = discretize(model, x, at_x);
  const int m = at_x.node_count;
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m) - rho2 * op.matrix;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::MatrixXd& packed = lu.matrixLU();
  double log_abs = 0.0;
  int sign = static_cast<int>(lu.permutationP().determinant());
  for (int i = 0; i < m; ++i) {
    const double d = packed(i, i);
    if (d == 0.0) {
      r.value = 0.0;
      r.log_value = -std::numeric_limits<double>::infinity();
      r.sign = 0;
      notify(model, at_x, r);
      return r;
    }
    if (d < 0.0) sign = -sign;
    log_abs += std::log(std::abs(d));
  }
  if (!std::isfinite(log_abs)) throw EvaluationError("fredholm_det: non-finite determinant");
  r.sign = sign;
  r.log_value = log_abs;
  r.value = sign * std::exp(log_abs);
  const double edge = x + at_x.truncation_length;
  r.truncation_residual = std::abs(rho2) * wave_table(model, edge)->square_tail(edge);
  notify(model, at_x, r);
  return r;
}

DeterminantResult fredholm_det(const ModelSpec& model, double rho, double x, const QuadratureScheme& scheme) {
  DeterminantResult r = fredholm_det_rho2(model, rho * rho, x, scheme);
  r.rho = rho;
  return r;
}

DeterminantResult fredholm_det(const ModelSpec& model, double rho, double x) {
  return fredholm_det(model, rho, x, default_scheme(model, rho * rho, x));
}

DeterminantResult fredholm_det_checked(const ModelSpec& model, double rho, double x) {
  const QuadratureScheme base = default_scheme(model, rho * rho, x);
  DeterminantResult r = fredholm_det(model, rho, x, base);
  const DeterminantResult fine =
      fredholm_det(model, rho, x, make_scheme(x, 2 * base.node_count, base.truncation_length));
  r.self_consistency_delta = std::abs(fine.log_value - r.log_value);
  return r;
}

std::vector<DeterminantResult> fredholm_det_grid(const ModelSpec& model, double rho2, const std::vector<double>& xs,
                                                 const QuadratureScheme& shape) {
  std::vector<DeterminantResult> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(fredholm_det_rho2(model, rho2, x, shift_scheme(shape, x)));
  return out;
}

namespace {

// Five-point first and second derivatives with step h from f(-2h..2h).
std::pair<double, double> five_point(const double* f, double h) {
  const double d1 = (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12.0 * h);
  const double d2 = (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) / (12.0 * h * h);
  return {d1, d2};
}

// Richardson-combined derivatives at grid index i of values spaced by g = h/2.
LogDerivatives richardson_at(const std::vector<double>& f, std::size_t i, double g) {
  const double wide[5] = {f[i - 4], f[i - 2], f[i], f[i + 2], f[i + 4]};
  const double narrow[5] = {f[i - 2], f[i - 1], f[i], f[i + 1], f[i + 2]};
  const auto [w1, w2] = five_point(wide, 2.0 * g);
  const auto [n1, n2] = five_point(narrow, g);
  return {(16.0 * n1 - w1) / 15.0, (16.0 * n2 - w2) / 15.0};
}

}  // namespace

namespace {

// Nine-point ln|F| stencil around x; sign must be constant across it.
LogDerivatives stencil_derivs(const ModelSpec& model, double rho, double x, double h, bool allow_negative,
                              const char* who) {
  const double rho2 = rho * rho;
  if (rho2 == 0.0) return {};
  const double g = 0.5 * h;
  const QuadratureScheme shape = default_scheme(model, rho2, x - 2.0 * h);
  std::vector<double> f(9, 0.0);
  int sign = 0;
  for (int k = -4; k <= 4; ++k) {
    if (k == 3 || k == -3) continue;
    const auto r = fredholm_det_rho2(model, rho2, x + k * g, shift_scheme(shape, x + k * g));
    const bool bad = allow_negative ? (r.value == 0.0 || (sign != 0 && r.sign != sign)) : r.sign <= 0;
    if (bad) throw PoleProximityError(std::string(who) + ": zero of F inside the stencil");
    sign = r.sign;
    f[static_cast<std::size_t>(k + 4)] = r.log_value;
  }
  return richardson_at(f, 4, g);
}

}  // namespace

LogDerivatives log_f_derivs(const ModelSpec& model, double rho, double x, double h) {
  return stencil_derivs(model, rho, x, h, false, "log_f_derivs");
}

LogDerivatives log_abs_f_derivs(const ModelSpec& model, double rho, double x, double h) {
  return stencil_derivs(model, rho, x, h, true, "log_abs_f_derivs");
}

double q_extract(const ModelSpec& model, double rho, double x) {
  const LogDerivatives d = log_f_derivs(model, rho, x);
  if (d.d2 > 1e-6) throw EvaluationError("q_extract: second log-derivative is positive");
  return std::sqrt(std::max(0.0, -d.d2));
}

DerivativeScan log_f_derivs_scan(const ModelSpec& model, double rho, double x_lo, double x_hi, double h) {
  if (!(x_hi >= x_lo)) throw DomainError("log_f_derivs_scan: empty range");
  const double g = 0.5 * h;
  const double rho2 = rho * rho;
  const auto count = static_cast<std::size_t>(std::llround((x_hi - x_lo) / g)) + 1;
  std::vector<double> xs;
  for (std::size_t k = 0; k < count + 8; ++k) xs.push_back(x_lo + (static_cast<double>(k) - 4.0) * g);
  std::vector<double> f(xs.size(), 0.0);
  std::vector<int> sign(xs.size(), 1);
  if (rho2 != 0.0) {
    const QuadratureScheme shape = default_scheme(model, rho2, xs.front());
    const auto dets = fredholm_det_grid(model, rho2, xs, shape);
    for (std::size_t k = 0; k < xs.size(); ++k) f[k] = dets[k].log_value, sign[k] = dets[k].sign;
  }
  DerivativeScan out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 4; k < xs.size() - 4; ++k) {
    out.x.push_back(xs[k]);
    out.log_f.push_back(f[k]);
    bool ok = true;
    for (std::size_t j = k - 4; j <= k + 4; ++j) ok = ok && sign[j] > 0;
    if (!ok) {
      out.d1.push_back(nan);
      out.d2.push_back(nan);
      continue;
    }
    const auto d = richardson_at(f, k, g);
    out.d1.push_back(d.d1);
    out.d2.push_back(d.d2);
  }
  return out;
}

std::vector<double> f_zeros(const ModelSpec& model, double rho, std::pair<double, double> window, double step) {
  const auto [lo, hi] = window;
  if (!(hi > lo)) throw DomainError("f_zeros: empty window");
  const double rho2 = rho * rho;
  const QuadratureScheme shape = default_scheme(model, rho2, lo);
  auto signed_f = [&](double x) {
    const auto r = fredholm_det_rho2(model, rho2, x, shift_scheme(shape, x));
    return r.value;
  };
  std::vector<double> zeros;
  const auto steps = static_cast<int>(std::ceil((hi - lo) / step));
  double xa = hi, fa = signed_f(hi);
  for (int k = 1; k <= steps; ++k) {
    const double xb = std::max(lo, hi - k * step);
    const double fb = signed_f(xb);
    if (fa == 0.0) {
      zeros.push_back(xa);
    } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      // Illinois false position on [xb, xa].
      double a = xb, b = xa, f_a = fb, f_b = fa;
      double c = 0.5 * (a + b), prev = a;
      int side = 0;
      for (int it = 0; it < 200 && b - a > 1e-9 && std::abs(c - prev) > 1e-10; ++it) {
        prev = c;
        c = (a * f_b - b * f_a) / (f_b - f_a);
        const double fc = signed_f(c);
        if (fc == 0.0) break;
        if ((fc < 0.0) == (f_a < 0.0)) {
          a = c, f_a = fc;
          if (side == -1) f_b *= 0.5;
          side = -1;
        } else {
          b = c, f_b = fc;
          if (side == 1) f_a *= 0.5;
          side = 1;
        }
      }
      zeros.push_back(b - a <= 1e-9 ? 0.5 * (a + b) : c);
    }
    xa = xb, fa = fb;
  }
  return zeros;
}

std::pair<double, double> counting_moments(const ModelSpec& model, double x, double step) {
  if (!(x > 0.0)) throw DomainError("counting_moments: x must be positive");
  const QuadratureScheme shape = default_scheme(model, 1.0, -x);
  double f[5];
  for (int k = -2; k <= 2; ++k) {
    const double gamma = k * step;
    const double rho2 = -std::expm1(-2.0 * kPi * gamma);
    const auto r = fredholm_det_rho2(model, rho2, -x, shape);
    if (r.sign <= 0) throw EvaluationError("counting_moments: non-positive generating function");
    f[k + 2] = r.log_value;
  }
  const auto [d1, d2] = five_point(f, step);
  return {-d1 / (2.0 * kPi), d2 / (4.0 * kPi * kPi)};
}

std::pair<double, double> counting_traces(const ModelSpec& model, double x) {
  const DiscretizedOperator op = discretize(model, -x, default_scheme(model, 1.0, -x));
  const double tr = op.matrix.trace();
  return {tr, tr - op.matrix.squaredNorm()};
}

double total_integral_lhs(const ModelSpec& model, double rho, double x) {
  if (!(x < 0.0)) throw DomainError("total_integral_lhs: x must be negative");
  const AsymParams p = subcritical_params(rho, model.n());
  const double beta = p.first;
  const int n = model.n();
  const double abs_x = -x;
  const double log_f = fredholm_det(model, rho, x).log_value;
  return log_f + beta * saddle_phase(model, abs_x, n) - (2.0 * n + 1.0) * beta * beta / (8.0 * n) * std::log(abs_x);
}

}  // namespace hoairy
