// Run configuration shared by the CLI subcommands.

#ifndef HOAIRY_TOOLS_RUN_CONFIG_HPP_
#define HOAIRY_TOOLS_RUN_CONFIG_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hoairy/model.hpp"

namespace hoairy::cli {

enum class Spacing { linear, power };

/// start:stop:count[:pow]. With pow, points are start + (stop - start) u^pow on a uniform u grid.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  Spacing spacing = Spacing::linear;
  double power = 1.0;

  std::vector<double> points() const;
};

GridSpec parse_grid(const std::string& text);
std::string format_grid(const GridSpec& grid);

enum class OutputFormat { csv, json };

struct RunConfig {
  int n = 1;
  std::vector<double> tau;
  double rho = 1.0;
  GridSpec grid{0.0, 0.0, 1};
  std::optional<GridSpec> second_grid;
  std::optional<int> node_count;
  OutputFormat format = OutputFormat::csv;
  std::string cache_dir;
  int jobs = 1;
  double tolerance = 1e-12;

  ModelSpec model() const { return make_model(n, tau); }
  void validate() const;
};

/// Fields present in `doc` override `base`.
RunConfig merge_json(RunConfig base, const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path, RunConfig base = {});
nlohmann::json to_json(const RunConfig& config);

/// --cache-dir, else $HOAIRY_CACHE_DIR, else empty (no cache).
std::string default_cache_dir();

}  // namespace hoairy::cli

#endif  // HOAIRY_TOOLS_RUN_CONFIG_HPP_
