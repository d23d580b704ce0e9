#include "run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hoairy/errors.hpp"

namespace hoairy::cli {

std::vector<double> GridSpec::points() const {
  if (count < 1) throw DomainError("grid: count must be >= 1");
  if (count == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double u = static_cast<double>(i) / (count - 1);
    if (spacing == Spacing::power) u = std::pow(u, power);
    out[static_cast<std::size_t>(i)] = start + (stop - start) * u;
  }
  out.back() = stop;
  return out;
}

namespace {

double parse_number(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v))
    throw DomainError(std::string("grid: bad ") + what + " '" + s + "'");
  return v;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (!text.empty() && text.back() == ':') parts.emplace_back();
  GridSpec g;
  if (parts.size() == 1) {
    g.start = g.stop = parse_number(parts[0], "value");
    return g;
  }
  if (parts.size() < 3 || parts.size() > 4) throw DomainError("grid: expected start:stop:count[:pow], got '" + text + "'");
  g.start = parse_number(parts[0], "start");
  g.stop = parse_number(parts[1], "stop");
  const double c = parse_number(parts[2], "count");
  if (c < 1 || c != std::floor(c) || c > 1e7) throw DomainError("grid: count must be a positive integer");
  g.count = static_cast<int>(c);
  if (parts.size() == 4) {
    g.spacing = Spacing::power;
    g.power = parse_number(parts[3], "power");
    if (!(g.power > 0.0)) throw DomainError("grid: power must be positive");
  }
  return g;
}

std::string format_grid(const GridSpec& g) {
  std::ostringstream os;
  os.precision(17);
  os << g.start << ':' << g.stop << ':' << g.count;
  if (g.spacing == Spacing::power) os << ':' << g.power;
  return os.str();
}

void RunConfig::validate() const {
  if (n < 1 || n > 12) throw DomainError("config: n must be in [1, 12]");
  if (static_cast<int>(tau.size()) != n - 1) throw DimensionError("config: tau must have n - 1 entries");
  if (grid.count < 1 || (second_grid && second_grid->count < 1)) throw DomainError("config: grid count must be >= 1");
  if (node_count && (*node_count < 1 || *node_count > 5000)) throw DomainError("config: nodes must be in [1, 5000]");
  if (jobs < 1 || jobs > 256) throw DomainError("config: jobs must be in [1, 256]");
  if (!std::isfinite(rho)) throw DomainError("config: rho must be finite");
  if (!(tolerance > 0.0)) throw DomainError("config: tolerance must be positive");
}

RunConfig merge_json(RunConfig c, const nlohmann::json& doc) {
  if (!doc.is_object()) throw DomainError("config: top level must be an object");
  if (doc.contains("n")) c.n = doc.at("n").get<int>();
  if (doc.contains("tau")) c.tau = doc.at("tau").get<std::vector<double>>();
  if (doc.contains("rho")) c.rho = doc.at("rho").get<double>();
  if (doc.contains("x")) c.grid = parse_grid(doc.at("x").get<std::string>());
  if (doc.contains("y")) c.second_grid = parse_grid(doc.at("y").get<std::string>());
  if (doc.contains("nodes")) c.node_count = doc.at("nodes").get<int>();
  if (doc.contains("format")) {
    const auto f = doc.at("format").get<std::string>();
    if (f != "csv" && f != "json") throw DomainError("config: format must be csv or json");
    c.format = f == "csv" ? OutputFormat::csv : OutputFormat::json;
  }
  if (doc.contains("cache_dir")) c.cache_dir = doc.at("cache_dir").get<std::string>();
  if (doc.contains("jobs")) c.jobs = doc.at("jobs").get<int>();
  if (doc.contains("tolerance")) c.tolerance = doc.at("tolerance").get<double>();
  return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open " + path);
  return merge_json(std::move(base), nlohmann::json::parse(in));
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j{{"n", c.n},
                   {"tau", c.tau},
                   {"rho", c.rho},
                   {"x", format_grid(c.grid)},
                   {"format", c.format == OutputFormat::csv ? "csv" : "json"},
                   {"cache_dir", c.cache_dir},
                   {"jobs", c.jobs},
                   {"tolerance", c.tolerance}};
  if (c.second_grid) j["y"] = format_grid(*c.second_grid);
  if (c.node_count) j["nodes"] = *c.node_count;
  return j;
}

std::string default_cache_dir() {
  const char* env = std::getenv("HOAIRY_CACHE_DIR");
  return env ? std::string(env) : std::string();
}

}  // namespace hoairy::cli
