// Subcommand implementations. Each returns a table; main.cpp handles parsing and output.

#ifndef HOAIRY_TOOLS_COMMANDS_HPP_
#define HOAIRY_TOOLS_COMMANDS_HPP_

#include <string>
#include <vector>

#include "result_cache.hpp"
#include "run_config.hpp"
#include "table.hpp"

namespace hoairy::cli {

/// Column layout version; bump when a header below changes.
inline constexpr const char* kSchemaVersion = "hoairy-table/1";

inline const std::vector<std::string> kAiryColumns{"x", "value", "error_estimate", "precision_warning"};
inline const std::vector<std::string> kKernelColumns{"x", "y", "K", "error_estimate", "precision_warning"};
inline const std::vector<std::string> kDetColumns{
    "x",        "F",           "log_abs_F", "sign",  "node_count", "truncation_length", "truncation_residual",
    "self_consistency_delta", "cache_hit", "seconds", "status"};
inline const std::vector<std::string> kScanColumns{"x", "log_F", "d1", "d2", "q"};
inline const std::vector<std::string> kQextractColumns{"x", "q", "d1", "d2", "status"};
inline const std::vector<std::string> kAsympColumns{"x", "value", "phase", "error_order", "terms", "status"};
inline const std::vector<std::string> kPolesColumns{"m", "estimate", "zero", "rel_error", "status"};
inline const std::vector<std::string> kCountingColumns{"x",      "mean",   "variance", "mu",      "sigma2",
                                                       "var_const", "mean_gap", "var_gap", "clt", "status"};

Table cmd_airy(const RunConfig& config);

/// Kernel on the x grid times the y grid; on the diagonal when no y grid is given.
Table cmd_kernel(const RunConfig& config);

/// Determinant per grid point, with a node-doubling diagnostic. Cache-backed, parallel over points.
Table cmd_det(const RunConfig& config, ResultCache& cache);

/// Uniform derivative scan of ln F over [start, stop] of the x grid with stencil step h.
Table cmd_scan(const RunConfig& config, double h, ResultCache& cache);

Table cmd_qextract(const RunConfig& config);

enum class AsympKind { q_sub, log_f, q_super, dlog_f_super };
AsympKind parse_asymp_kind(const std::string& name);
Table cmd_asymp(const RunConfig& config, AsympKind kind);

/// Zeros of F in the x window paired with pole estimates m_lo..m_hi (tau = 0 only).
Table cmd_poles(const RunConfig& config, int m_lo, int m_hi);

/// Counting statistics at positive x; clt uses the given s.
Table cmd_counting(const RunConfig& config, double s);

enum class CompareKind { log_f, q_sub, q_super, total, counting, poles };
CompareKind parse_compare_kind(const std::string& name);

struct CompareOptions {
  double h = 1e-2;         // derivative stencil step
  double window = 1.0;     // envelope window width
  int m_lo = 1, m_hi = 5;  // poles
  double s = 1.0;          // counting
};
/// Numeric-vs-asymptotic residual table with fitted slopes in the summary.
Table cmd_compare(const RunConfig& config, CompareKind kind, const CompareOptions& options, ResultCache& cache);

}  // namespace hoairy::cli

#endif  // HOAIRY_TOOLS_COMMANDS_HPP_
