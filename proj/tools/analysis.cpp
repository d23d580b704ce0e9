#include "analysis.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace hoairy::cli {

std::vector<Extremum> local_extrema(const std::vector<double>& xs, const std::vector<double>& ys, bool maxima) {
  if (xs.size() != ys.size()) throw std::invalid_argument("local_extrema: size mismatch");
  std::vector<Extremum> out;
  const double s = maxima ? 1.0 : -1.0;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
    const double a = s * ys[i - 1], b = s * ys[i], c = s * ys[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) continue;
    if (!(b > a && b >= c)) continue;
    // Vertex on a uniform local spacing; falls back to the sample on degenerate curvature.
    const double h = 0.5 * (xs[i + 1] - xs[i - 1]);
    const double curv = a - 2.0 * b + c;
    Extremum e{xs[i], ys[i]};
    if (curv < 0.0) {
      const double t = 0.5 * (a - c) / curv;
      e.x = xs[i] + t * h;
      e.value = s * (b - 0.25 * (a - c) * t);
    }
    out.push_back(e);
  }
  return out;
}

std::vector<Extremum> window_envelope(const std::vector<double>& xs, const std::vector<double>& ys, double width) {
  if (xs.size() != ys.size()) throw std::invalid_argument("window_envelope: size mismatch");
  if (!(width > 0.0)) throw std::invalid_argument("window_envelope: width must be positive");
  if (xs.empty()) return {};
  double x0 = xs.front();
  for (double x : xs) x0 = std::min(x0, x);
  std::map<long, Extremum> best;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(ys[i])) continue;
    const long k = static_cast<long>(std::floor((xs[i] - x0) / width));
    auto it = best.find(k);
    if (it == best.end() || std::abs(ys[i]) > std::abs(it->second.value)) best[k] = {xs[i], ys[i]};
  }
  std::vector<Extremum> out;
  for (const auto& [k, e] : best) out.push_back(e);
  return out;
}

PowerFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("loglog_fit: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0.0 || ys[i] == 0.0 || !std::isfinite(ys[i])) continue;
    const double u = std::log(std::abs(xs[i]));
    const double v = std::log(std::abs(ys[i]));
    sx += u, sy += v, sxx += u * u, sxy += u * v;
    ++m;
  }
  if (m < 2) throw std::invalid_argument("loglog_fit: need at least two usable points");
  const double det = m * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("loglog_fit: degenerate abscissae");
  PowerFit fit;
  fit.slope = (m * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / m;
  fit.points = m;
  return fit;
}

PowerFit loglog_fit(const std::vector<Extremum>& points) {
  std::vector<double> xs, ys;
  for (const auto& p : points) xs.push_back(p.x), ys.push_back(p.value);
  return loglog_fit(xs, ys);
}

}  // namespace hoairy::cli
