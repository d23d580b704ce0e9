#include "hoairy/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "hoairy/errors.hpp"

namespace hoairy {

namespace {

// Coefficient of z^{-1} in Q(z)^{m/(2n)} expanded at infinity with the branch
// Q^{m/(2n)} ~ z^m. Writing Q = z^{2n} (1 + u(w)), w = z^{-2}, this is the
// coefficient of w^{(m+1)/2} in (1 + u)^{m/(2n)}.
Poly inverse_z_coefficient(int n, int m) {
  if ((m + 1) % 2 != 0) return Poly();
  const int target = (m + 1) / 2;
  PuiseuxSeries<Poly> one_plus_u(Rational(1), Rational(target));
  one_plus_u.add_term(Rational(0), Poly(1));
  for (int j = 1; j < n; ++j) one_plus_u.add_term(Rational(n - j), q_coefficient_symbolic(n, j));
  const auto powered = one_plus_u.pow(Rational(m, 2 * n));
  return powered.coefficient(Rational(target));
}

struct SymbolicCache {
  std::mutex mutex;
  std::map<std::pair<int, int>, std::vector<Poly>> a;
  std::map<std::pair<int, int>, std::vector<Poly>> b;
};

SymbolicCache& cache() {
  static SymbolicCache c;
  return c;
}

std::vector<double> evaluate_all(const std::vector<Poly>& polys, const ModelSpec& model) {
  const auto values = model.parameter_values();
  std::vector<double> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(p.evaluate(values));
  return out;
}

// Smallest R such that Q is strictly increasing on [R, inf).
double monotone_radius(const ModelSpec& model) {
  const int n = model.n();
  const EvenPolynomial q = q_of_model(model);
  double weight = 0.0;
  for (int j = 1; j < n; ++j) weight += j * std::abs(q.coefficient(2 * j));
  if (weight == 0.0) return 0.0;
  auto excess = [&](double r) {
    double s = 0.0;
    for (int j = 1; j < n; ++j) s += j * std::abs(q.coefficient(2 * j)) * std::pow(r, 2 * j - 2 * n);
    return s - n;
  };
  double lo = 1e-8;
  double hi = 1.0;
  while (excess(hi) >= 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) >= 0.0 ? lo : hi) = mid;
  }
  return hi * (1.0 + 1e-9);
}

double bisect_then_newton(const EvenPolynomial& q, double level, double lo, double hi) {
  // Invariant: q(lo) <= level < q(hi).
  for (int it = 0; it < 200 && hi - lo > 1e-6 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (q(mid) <= level ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const double d = q.derivative(s);
    if (d <= 0.0) break;
    const double step = (q(s) - level) / d;
    const double next = std::clamp(s - step, lo, hi);
    if (std::abs(next - s) <= 1e-16 * std::max(1.0, std::abs(s))) {
      s = next;
      break;
    }
    s = next;
  }
  return s;
}

}  // namespace

std::vector<Poly> a_coeffs_symbolic(int n, int kmax) {
  if (kmax < 0) throw DomainError("a_coeffs: kmax must be >= 0");
  auto& c = cache();
  {
    std::lock_guard lock(c.mutex);
    auto it = c.a.find({n, kmax});
    if (it != c.a.end()) return it->second;
  }
  std::vector<Poly> a{Poly(1)};
  for (int k = 1; k <= kmax; ++k) {
    const Poly residue = -inverse_z_coefficient(n, 2 * k - 1);
    a.push_back(residue / Rational(2 * k - 1));
  }
  std::lock_guard lock(c.mutex);
  c.a.emplace(std::pair{n, kmax}, a);
  return a;
}

std::vector<double> a_coeffs(const ModelSpec& model, int kmax) {
  return evaluate_all(a_coeffs_symbolic(model.n(), kmax), model);
}

std::vector<Poly> b_coeffs_symbolic(int n, int kmax) {
  if (kmax < 0) throw DomainError("b_coeffs: kmax must be >= 0");
  auto& c = cache();
  {
    std::lock_guard lock(c.mutex);
    auto it = c.b.find({n, kmax});
    if (it != c.b.end()) return it->second;
  }
  std::vector<Poly> b{Poly()};
  for (int k = 1; k <= kmax; ++k) {
    const Poly residue = -inverse_z_coefficient(n, k);
    b.push_back(residue / Rational(k));
  }
  std::lock_guard lock(c.mutex);
  c.b.emplace(std::pair{n, kmax}, b);
  return b;
}

std::vector<double> b_coeffs(const ModelSpec& model, int kmax) {
  return evaluate_all(b_coeffs_symbolic(model.n(), kmax), model);
}

double largest_q_root(const ModelSpec& model, double level) {
  const EvenPolynomial q = q_of_model(model);
  const double radius = monotone_radius(model);
  double hi = std::max(1.0, radius);
  while (q(hi) <= level) hi *= 2.0;
  if (q(radius) <= level) return bisect_then_newton(q, level, radius, hi);
  // Root, if any, lies below the monotone radius: scan downward for the last crossing.
  constexpr int kSamples = 4096;
  double upper = radius;
  for (int i = kSamples - 1; i >= 0; --i) {
    const double s = radius * i / kSamples;
    if (q(s) <= level) return bisect_then_newton(q, level, s, upper);
    upper = s;
  }
  return -1.0;
}

double z_plus_value(const ModelSpec& model, double x) {
  if (!(x < 0.0)) throw DomainError("z_plus_value: x must be negative");
  const double abs_x = -x;
  const EvenPolynomial q = q_of_model(model);
  const double radius = monotone_radius(model);
  constexpr int kSamples = 4096;
  for (int i = 0; i <= kSamples; ++i) {
    if (q(radius * i / kSamples) >= abs_x)
      throw DomainError("z_plus_value: |x| too small to isolate the increasing branch of Q");
  }
  double hi = std::max(2.0 * radius, 1.0);
  while (q(hi) <= abs_x) hi *= 2.0;
  const double s = bisect_then_newton(q, abs_x, radius, hi);
  return 0.5 * s * std::pow(abs_x, -1.0 / (2.0 * model.n()));
}

PuiseuxSeries<Poly> z_plus_series_symbolic(int n, int kmax) {
  const auto a = a_coeffs_symbolic(n, kmax);
  PuiseuxSeries<Poly> s(Rational(1, 2 * n), Rational(kmax, n));
  s.add_term(Rational(0), Poly(Rational(1, 2)));
  for (int k = 1; k <= kmax; ++k) s.add_term(Rational(k, n), a[static_cast<std::size_t>(k)] * Rational(1, 2));
  return s;
}

PuiseuxSeries<double> z_plus_series(const ModelSpec& model, int kmax) {
  return numeric(z_plus_series_symbolic(model.n(), kmax), model.parameter_values());
}

std::complex<double> g_eval(const ModelSpec& model, std::complex<double> z, double x) {
  const int n = model.n();
  const double abs_x = std::abs(x);
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> two_z = 2.0 * z;
  std::complex<double> g = i * std::pow(two_z, 2 * n + 1) / (4.0 * n + 2.0) - i * z;
  const EvenPolynomial q = q_of_model(model);
  for (int j = 1; j < n; ++j) {
    g += i * q.coefficient(2 * j) * std::pow(two_z, 2 * j + 1) *
         std::pow(abs_x, static_cast<double>(j - n) / n) / (4.0 * j + 2.0);
  }
  return g;
}

PuiseuxSeries<Poly> g_saddle_series_symbolic(int n, int kmax) {
  const auto a = a_coeffs_symbolic(n, kmax);
  PuiseuxSeries<Poly> s(Rational(1, 2 * n), Rational(2 * kmax - 2 * n - 1, 2 * n));
  for (int k = 0; k <= kmax; ++k) {
    const int odd = 1 + 2 * (n - k);
    s.add_term(Rational(-odd, 2 * n), a[static_cast<std::size_t>(k)] * Rational(2 * n, odd));
  }
  return s;
}

PuiseuxSeries<double> g_saddle_series(const ModelSpec& model, int kmax) {
  return numeric(g_saddle_series_symbolic(model.n(), kmax), model.parameter_values());
}

PuiseuxSeries<Poly> g_saddle_series_by_substitution(int n, int kmax) {
  // 2i g(z) |x|^{(2n+1)/(2n)} = -2 eps^{-(2n+1)/(2n)} [ (2z)^{2n+1}/(4n+2) - z
  //     + sum_j c_j (2z)^{2j+1} eps^{(n-j)/n} / (4j+2) ],   eps = |x|^{-1}.
  const auto z = z_plus_series_symbolic(n, kmax);
  const auto two_z = z * Poly(2);
  std::vector<PuiseuxSeries<Poly>> powers{two_z};
  for (int p = 2; p <= 2 * n + 1; ++p) powers.push_back(powers.back() * two_z);
  auto power_of = [&](int p) { return powers[static_cast<std::size_t>(p - 1)]; };

  auto bracket = power_of(2 * n + 1) * Poly(Rational(1, 4 * n + 2)) - z;
  for (int j = 1; j < n; ++j) {
    bracket = bracket + power_of(2 * j + 1).shifted(Rational(n - j, n)) *
                            (q_coefficient_symbolic(n, j) * Rational(1, 4 * j + 2));
  }
  return (bracket * Poly(-2)).shifted(Rational(-(2 * n + 1), 2 * n));
}

double saddle_phase(const ModelSpec& model, double abs_x, int kmax) {
  const int n = model.n();
  const auto a = a_coeffs(model, kmax);
  double sum = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    const double odd = 1.0 + 2.0 * (n - k);
    sum += 2.0 * n * a[static_cast<std::size_t>(k)] / odd * std::pow(abs_x, odd / (2.0 * n));
  }
  return sum;
}

double saddle_phase_derivative(const ModelSpec& model, double abs_x, int kmax) {
  const int n = model.n();
  const auto a = a_coeffs(model, kmax);
  double sum = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    const double odd = 1.0 + 2.0 * (n - k);
    sum += a[static_cast<std::size_t>(k)] * std::pow(abs_x, (odd - 2.0 * n) / (2.0 * n));
  }
  return sum;
}

}  // namespace hoairy
