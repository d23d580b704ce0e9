#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>

#include "hoairy/asymptotics.hpp"
#include "hoairy/errors.hpp"
#include "hoairy/fredholm.hpp"
#include "hoairy/special_functions.hpp"

#include "analysis.hpp"
#include "worker_pool.hpp"

namespace hoairy::cli {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string error_status(const std::exception& e) { return std::string("error: ") + e.what(); }

json model_inputs(const RunConfig& c) { return {{"n", c.n}, {"tau", c.tau}}; }

std::vector<double> grid_points(const GridSpec& g) {
  auto xs = g.points();
  if (xs.empty()) throw DomainError("grid: no points");
  return xs;
}

/// One row per x, computed in parallel, emitted in increasing x.
template <class RowFn>
Table rows_by_x(std::vector<std::string> columns, std::vector<double> xs, int jobs, RowFn row) {
  std::vector<std::vector<Cell>> rows(xs.size());
  parallel_for(xs.size(), jobs, [&](std::size_t i) { rows[i] = row(xs[i]); });
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  Table t{std::move(columns), {}, nullptr};
  for (std::size_t i : order) t.add_row(std::move(rows[i]));
  return t;
}

std::string rational_text(const Rational& r) { return r.str(); }

std::string terms_text(const AsymEvaluation& e) {
  std::ostringstream os;
  for (std::size_t i = 0; i < e.leading_terms.size(); ++i) {
    if (i) os << ';';
    os << e.leading_terms[i].label << '=' << format_double(e.leading_terms[i].value);
  }
  return os.str();
}

struct DetRecord {
  double value = kNan, log_abs = kNan;
  int sign = 0;
  int node_count = 0;
  double length = kNan, residual = kNan, delta = kNan;
};

json to_payload(const DetRecord& r) {
  return {{"F", encode_double(r.value)},          {"log_abs_F", encode_double(r.log_abs)},
          {"sign", r.sign},                       {"node_count", r.node_count},
          {"truncation_length", encode_double(r.length)}, {"truncation_residual", encode_double(r.residual)},
          {"self_consistency_delta", encode_double(r.delta)}};
}

DetRecord from_payload(const json& p) {
  DetRecord r;
  r.value = decode_double(p.at("F"));
  r.log_abs = decode_double(p.at("log_abs_F"));
  r.sign = p.at("sign").get<int>();
  r.node_count = p.at("node_count").get<int>();
  r.length = decode_double(p.at("truncation_length"));
  r.residual = decode_double(p.at("truncation_residual"));
  r.delta = decode_double(p.at("self_consistency_delta"));
  return r;
}

DetRecord compute_det(const ModelSpec& model, double rho, double x, std::optional<int> nodes) {
  const double rho2 = rho * rho;
  const QuadratureScheme s = nodes ? make_scheme(x, *nodes, choose_truncation(model, rho2, x))
                                   : default_scheme(model, rho2, x);
  const QuadratureScheme doubled = make_scheme(x, 2 * s.node_count, s.truncation_length);
  const auto r = fredholm_det(model, rho, x, s);
  const auto r2 = fredholm_det(model, rho, x, doubled);
  return {r.value,
          r.log_value,
          r.sign,
          r.node_count,
          r.truncation_length,
          r.truncation_residual,
          std::abs(r2.log_value - r.log_value)};
}

struct CachedDet {
  DetRecord record;
  bool hit = false;
  double seconds = 0.0;
};

CachedDet cached_det(const RunConfig& c, const ModelSpec& model, double x, ResultCache& cache) {
  const auto t0 = std::chrono::steady_clock::now();
  json inputs = model_inputs(c);
  inputs["rho"] = c.rho;
  inputs["x"] = x;
  if (c.node_count) inputs["nodes"] = *c.node_count;
  CachedDet out;
  if (auto hit = cache.get("det", inputs)) {
    out.record = from_payload(*hit);
    out.hit = true;
  } else {
    out.record = compute_det(model, c.rho, x, c.node_count);
    cache.put("det", inputs, to_payload(out.record));
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

DerivativeScan cached_scan(const RunConfig& c, double h, ResultCache& cache) {
  const double lo = std::min(c.grid.start, c.grid.stop);
  const double hi = std::max(c.grid.start, c.grid.stop);
  if (!(hi > lo)) throw DomainError("scan: the x grid must span an interval");
  if (!(h > 0.0)) throw DomainError("scan: h must be positive");
  json inputs = model_inputs(c);
  inputs["rho"] = c.rho;
  inputs["lo"] = lo;
  inputs["hi"] = hi;
  inputs["h"] = h;
  auto decode = [](const json& a) {
    std::vector<double> v;
    for (const auto& e : a) v.push_back(decode_double(e));
    return v;
  };
  auto encode = [](const std::vector<double>& v) {
    json a = json::array();
    for (double d : v) a.push_back(encode_double(d));
    return a;
  };
  if (auto hit = cache.get("scan", inputs))
    return {decode(hit->at("x")), decode(hit->at("log_F")), decode(hit->at("d1")), decode(hit->at("d2"))};
  const DerivativeScan s = log_f_derivs_scan(c.model(), c.rho, lo, hi, h);
  cache.put("scan", inputs, {{"x", encode(s.x)}, {"log_F", encode(s.log_f)}, {"d1", encode(s.d1)}, {"d2", encode(s.d2)}});
  return s;
}

Table poles_table(const RunConfig& c, int m_lo, int m_hi) {
  const ModelSpec model = c.model();
  if (!model.is_monomial()) throw DomainError("poles: pole estimates need tau = 0");
  if (m_lo < 1 || m_hi < m_lo) throw DomainError("poles: need 1 <= m_lo <= m_hi");
  const double lo = std::min(c.grid.start, c.grid.stop);
  const double hi = std::min(std::max(c.grid.start, c.grid.stop), -1e-3);
  if (!(hi > lo)) throw DomainError("poles: the x window must contain negative values");
  const AsymParams p = supercritical_params(c.rho, c.n);
  std::map<int, double> by_index;
  for (double z : f_zeros(model, c.rho, {lo, hi})) {
    const int m = static_cast<int>(std::lround(phase_super(model, p, -z) / kPi));
    by_index.emplace(m, z);
  }
  Table t{kPolesColumns, {}, nullptr};
  for (int m = m_lo; m <= m_hi; ++m) {
    const double est = pole_estimate(c.n, c.rho, m);
    const auto it = by_index.find(m);
    if (it == by_index.end()) {
      t.add_row({static_cast<std::int64_t>(m), est, kNan, kNan, std::string("no zero in window")});
      continue;
    }
    t.add_row({static_cast<std::int64_t>(m), est, it->second, std::abs(est - it->second) / std::abs(it->second),
               std::string("ok")});
  }
  return t;
}

double fitted_slope_or_nan(const std::vector<Extremum>& pts) {
  try {
    return loglog_fit(pts).slope;
  } catch (const std::invalid_argument&) {
    return kNan;
  }
}

json points_json(const std::vector<Extremum>& pts) {
  json a = json::array();
  for (const auto& e : pts) a.push_back({encode_double(e.x), encode_double(e.value)});
  return a;
}

}  // namespace

Table cmd_airy(const RunConfig& c) {
  const ModelSpec model = c.model();
  return rows_by_x(kAiryColumns, grid_points(c.grid), c.jobs, [&](double x) -> std::vector<Cell> {
    const CheckedValue v =
        model.is_monomial() ? airy_hi_checked(c.n, x, c.tolerance) : wave_a_checked(model, x, c.tolerance);
    return {x, v.value, v.error_estimate, v.precision_warning};
  });
}

Table cmd_kernel(const RunConfig& c) {
  const ModelSpec model = c.model();
  const auto xs = grid_points(c.grid);
  std::vector<std::pair<double, double>> pairs;
  if (c.second_grid) {
    for (double x : xs)
      for (double y : grid_points(*c.second_grid)) pairs.emplace_back(x, y);
  } else {
    for (double x : xs) pairs.emplace_back(x, x);
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::vector<Cell>> rows(pairs.size());
  parallel_for(pairs.size(), c.jobs, [&](std::size_t i) {
    const auto [x, y] = pairs[i];
    const CheckedValue k = kernel_eval_checked(model, x, y, c.tolerance);
    rows[i] = {x, y, k.value, k.error_estimate, k.precision_warning};
  });
  Table t{kKernelColumns, {}, nullptr};
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

Table cmd_det(const RunConfig& c, ResultCache& cache) {
  const ModelSpec model = c.model();
  Table t = rows_by_x(kDetColumns, grid_points(c.grid), c.jobs, [&](double x) -> std::vector<Cell> {
    try {
      const CachedDet d = cached_det(c, model, x, cache);
      const DetRecord& r = d.record;
      return {x, r.value, r.log_abs, static_cast<std::int64_t>(r.sign), static_cast<std::int64_t>(r.node_count),
              r.length, r.residual, r.delta, d.hit, d.seconds, std::string("ok")};
    } catch (const std::exception& e) {
      return {x, kNan, kNan, std::int64_t{0}, std::int64_t{0}, kNan, kNan, kNan, false, 0.0, error_status(e)};
    }
  });
  cache.flush();
  return t;
}

Table cmd_scan(const RunConfig& c, double h, ResultCache& cache) {
  const DerivativeScan s = cached_scan(c, h, cache);
  cache.flush();
  Table t{kScanColumns, {}, nullptr};
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double q = s.d2[i] <= 0.0 ? std::sqrt(-s.d2[i]) : kNan;
    t.add_row({s.x[i], s.log_f[i], s.d1[i], s.d2[i], q});
  }
  return t;
}

Table cmd_qextract(const RunConfig& c) {
  const ModelSpec model = c.model();
  return rows_by_x(kQextractColumns, grid_points(c.grid), c.jobs, [&](double x) -> std::vector<Cell> {
    try {
      const LogDerivatives d = log_f_derivs(model, c.rho, x);
      if (d.d2 > 1e-6) return {x, kNan, d.d1, d.d2, std::string("error: second log-derivative is positive")};
      return {x, std::sqrt(std::max(0.0, -d.d2)), d.d1, d.d2, std::string("ok")};
    } catch (const std::exception& e) {
      return {x, kNan, kNan, kNan, error_status(e)};
    }
  });
}

AsympKind parse_asymp_kind(const std::string& name) {
  if (name == "q_sub") return AsympKind::q_sub;
  if (name == "logF") return AsympKind::log_f;
  if (name == "q_super") return AsympKind::q_super;
  if (name == "dlogF_super") return AsympKind::dlog_f_super;
  throw DomainError("asymp: kind must be q_sub, logF, q_super or dlogF_super");
}

Table cmd_asymp(const RunConfig& c, AsympKind kind) {
  const ModelSpec model = c.model();
  return rows_by_x(kAsympColumns, grid_points(c.grid), c.jobs, [&](double x) -> std::vector<Cell> {
    try {
      AsymEvaluation e;
      switch (kind) {
        case AsympKind::q_sub: e = q_asym_sub(model, c.rho, x); break;
        case AsympKind::log_f: e = logF_asym(model, c.rho, x); break;
        case AsympKind::q_super: e = q_asym_super(model, c.rho, x); break;
        case AsympKind::dlog_f_super: e = dlogF_asym_super(model, c.rho, x); break;
      }
      return {x, e.value, e.phase, rational_text(e.error_order), terms_text(e), std::string("ok")};
    } catch (const std::exception& e) {
      return {x, kNan, kNan, std::string(), std::string(), error_status(e)};
    }
  });
}

Table cmd_poles(const RunConfig& c, int m_lo, int m_hi) { return poles_table(c, m_lo, m_hi); }

Table cmd_counting(const RunConfig& c, double s) {
  const ModelSpec model = c.model();
  return rows_by_x(kCountingColumns, grid_points(c.grid), c.jobs, [&](double x) -> std::vector<Cell> {
    try {
      const auto [mean, var] = counting_moments(model, x);
      const CountingAsymptotics a = mu_sigma(model, x);
      return {x,
              mean,
              var,
              a.mu,
              a.sigma2,
              a.var_const,
              mean - a.mu,
              var - a.sigma2 - a.var_const,
              clt_check(model, x, s),
              std::string("ok")};
    } catch (const std::exception& e) {
      return {x, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, error_status(e)};
    }
  });
}

CompareKind parse_compare_kind(const std::string& name) {
  if (name == "logF") return CompareKind::log_f;
  if (name == "q_sub") return CompareKind::q_sub;
  if (name == "q_super") return CompareKind::q_super;
  if (name == "total") return CompareKind::total;
  if (name == "counting") return CompareKind::counting;
  if (name == "poles") return CompareKind::poles;
  throw DomainError("compare: kind must be logF, q_sub, q_super, total, counting or poles");
}

Table cmd_compare(const RunConfig& c, CompareKind kind, const CompareOptions& o, ResultCache& cache) {
  const ModelSpec model = c.model();
  const int n = c.n;
  switch (kind) {
    case CompareKind::log_f: {
      Table t = rows_by_x({"x", "log_F", "asymptotic", "residual", "status"}, grid_points(c.grid), c.jobs,
                          [&](double x) -> std::vector<Cell> {
                            try {
                              const double lf = cached_det(c, model, x, cache).record.log_abs;
                              const double a = logF_asym(model, c.rho, x).value;
                              return {x, lf, a, lf - a, std::string("ok")};
                            } catch (const std::exception& e) {
                              return {x, kNan, kNan, kNan, error_status(e)};
                            }
                          });
      cache.flush();
      std::vector<double> xs, rs;
      for (std::size_t i = 0; i < t.rows.size(); ++i) xs.push_back(t.number(i, "x")), rs.push_back(t.number(i, "residual"));
      const auto env = window_envelope(xs, rs, o.window);
      t.summary = {{"kind", "logF"},
                   {"expected_order", encode_double(-1.0 / (2.0 * n))},
                   {"envelope_slope", encode_double(fitted_slope_or_nan(env))},
                   {"envelope", points_json(env)}};
      return t;
    }
    case CompareKind::q_sub: {
      const DerivativeScan s = cached_scan(c, o.h, cache);
      cache.flush();
      const AsymParams p = subcritical_params(c.rho, n);
      std::vector<double> q2(s.d2.size());
      for (std::size_t i = 0; i < q2.size(); ++i) q2[i] = -s.d2[i];
      Table t{{"x", "feature", "numeric", "asymptotic", "error"}, {}, nullptr};
      double phase_sum = 0.0, env_max = 0.0;
      int zeros = 0, maxima = 0;
      std::vector<std::pair<double, std::vector<Cell>>> rows;
      for (const auto& e : local_extrema(s.x, q2, false)) {
        const double phase = phase_sub(model, p, -e.x);
        const double err = std::abs(std::remainder(phase - 0.5 * kPi, kPi));
        phase_sum += err, ++zeros;
        rows.push_back({e.x, {e.x, std::string("zero"), std::sqrt(std::max(0.0, e.value)), std::remainder(phase, kPi), err}});
      }
      for (const auto& e : local_extrema(s.x, q2, true)) {
        const double env = std::sqrt(p.first / n) * std::pow(-e.x, -(2.0 * n - 1.0) / (4.0 * n));
        const double q = std::sqrt(std::max(0.0, e.value));
        const double err = std::abs(q - env) / env;
        env_max = std::max(env_max, err), ++maxima;
        rows.push_back({e.x, {e.x, std::string("max"), q, env, err}});
      }
      std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& r : rows) t.add_row(std::move(r.second));
      t.summary = {{"kind", "q_sub"},
                   {"zeros", zeros},
                   {"maxima", maxima},
                   {"mean_phase_error", encode_double(zeros ? phase_sum / zeros : kNan)},
                   {"max_envelope_rel_error", encode_double(maxima ? env_max : kNan)}};
      return t;
    }
    case CompareKind::q_super: {
      const AsymParams p = supercritical_params(c.rho, n);
      Table t = rows_by_x({"x", "dlog_abs_F", "asymptotic", "phase", "guarded", "scaled_error", "status"},
                          grid_points(c.grid), c.jobs, [&](double x) -> std::vector<Cell> {
                            try {
                              const double phase = phase_super(model, p, -x);
                              const double cot = 1.0 / std::tan(phase);
                              const double a = std::pow(-x, 1.0 / (2.0 * n)) * (2.0 * p.first - cot);
                              const double d1 = log_abs_f_derivs(model, c.rho, x).d1;
                              const double scale =
                                  std::pow(-x, 1.0 / (2.0 * n)) * std::max(1.0, std::abs(2.0 * p.first - cot));
                              const bool guarded = std::abs(std::sin(phase)) >= 0.5;
                              return {x, d1, a, std::remainder(phase, kPi), guarded, std::abs(d1 - a) / scale,
                                      std::string("ok")};
                            } catch (const std::exception& e) {
                              return {x, kNan, kNan, kNan, false, kNan, error_status(e)};
                            }
                          });
      double worst = 0.0;
      int used = 0;
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (!std::get<bool>(t.rows[i][4])) continue;
        const double e = t.number(i, "scaled_error");
        if (std::isfinite(e)) worst = std::max(worst, e), ++used;
      }
      t.summary = {{"kind", "q_super"}, {"guarded_points", used}, {"max_scaled_error", encode_double(used ? worst : kNan)}};
      return t;
    }
    case CompareKind::total: {
      const double rhs = total_integral_rhs(c.rho, n);
      Table t = rows_by_x({"x", "lhs", "rhs", "difference", "status"}, grid_points(c.grid), c.jobs,
                          [&](double x) -> std::vector<Cell> {
                            try {
                              const double lhs = total_integral_lhs(model, c.rho, x);
                              return {x, lhs, rhs, lhs - rhs, std::string("ok")};
                            } catch (const std::exception& e) {
                              return {x, kNan, rhs, kNan, error_status(e)};
                            }
                          });
      std::vector<double> xs, ds;
      for (std::size_t i = 0; i < t.rows.size(); ++i) xs.push_back(t.number(i, "x")), ds.push_back(t.number(i, "difference"));
      const auto env = window_envelope(xs, ds, o.window);
      t.summary = {{"kind", "total"}, {"rhs", encode_double(rhs)}, {"envelope_slope", encode_double(fitted_slope_or_nan(env))}};
      return t;
    }
    case CompareKind::counting: {
      Table t = cmd_counting(c, o.s);
      const double vc = mu_sigma(model, 1.0).var_const;
      json gaps = json::array();
      for (std::size_t i = 0; i < t.rows.size(); ++i)
        gaps.push_back({encode_double(t.number(i, "x")), encode_double(t.number(i, "var_gap"))});
      t.summary = {{"kind", "counting"}, {"var_const", encode_double(vc)}, {"var_gap", gaps}};
      return t;
    }
    case CompareKind::poles: {
      Table t = poles_table(c, o.m_lo, o.m_hi);
      bool decreasing = true;
      double prev = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double e = t.number(i, "rel_error");
        if (!std::isfinite(e)) continue;
        decreasing = decreasing && e < prev;
        prev = e;
      }
      t.summary = {{"kind", "poles"}, {"rel_error_decreasing", decreasing}};
      return t;
    }
  }
  throw InternalConsistencyError("compare: unhandled kind");
}

}  // namespace hoairy::cli
