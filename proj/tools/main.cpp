// hoairy: command-line front end.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hoairy/errors.hpp"

#include "acceptance.hpp"
#include "commands.hpp"
#include "result_cache.hpp"
#include "run_config.hpp"
#include "table.hpp"

using namespace hoairy;
using namespace hoairy::cli;

namespace {

struct CommonFlags {
  int n = 1;
  std::vector<double> tau;
  double rho = 1.0;
  std::string x, y;
  int nodes = 0;
  std::string format = "csv";
  std::string cache_dir;
  int jobs = 1;
  double tolerance = 1e-12;
  std::string config;
};

struct CommonOptions {
  std::map<std::string, CLI::Option*> opts;
  bool given(const std::string& name) const { return opts.at(name)->count() > 0; }
};

CommonOptions add_common(CLI::App* app, CommonFlags& f) {
  CommonOptions o;
  o.opts["n"] = app->add_option("--n", f.n, "hierarchy order")->check(CLI::Range(1, 12));
  o.opts["tau"] = app->add_option("--tau", f.tau, "tau_1,...,tau_{n-1} (default zeros)")->delimiter(',');
  o.opts["rho"] = app->add_option("--rho", f.rho, "deformation parameter");
  o.opts["x"] = app->add_option("--x", f.x, "grid a:b:count[:pow] or a single value");
  o.opts["y"] = app->add_option("--y", f.y, "second grid (kernel)");
  o.opts["nodes"] = app->add_option("--nodes", f.nodes, "quadrature node override")->check(CLI::Range(1, 5000));
  o.opts["format"] = app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  o.opts["cache-dir"] = app->add_option("--cache-dir", f.cache_dir, "result cache directory (env HOAIRY_CACHE_DIR)");
  o.opts["jobs"] = app->add_option("--jobs", f.jobs, "worker threads")->check(CLI::Range(1, 256));
  o.opts["tolerance"] = app->add_option("--tolerance", f.tolerance, "accuracy target for checked evaluators");
  o.opts["config"] = app->add_option("--config", f.config, "JSON run configuration; flags override it");
  return o;
}

RunConfig build_config(const CommonFlags& f, const CommonOptions& o) {
  RunConfig c;
  c.cache_dir = default_cache_dir();
  if (o.given("config")) c = load_config_file(f.config, c);
  if (o.given("n")) c.n = f.n;
  if (o.given("tau")) c.tau = f.tau;
  if (o.given("rho")) c.rho = f.rho;
  if (o.given("x")) c.grid = parse_grid(f.x);
  if (o.given("y")) c.second_grid = parse_grid(f.y);
  if (o.given("nodes")) c.node_count = f.nodes;
  if (o.given("format")) c.format = f.format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (o.given("cache-dir")) c.cache_dir = f.cache_dir;
  if (o.given("jobs")) c.jobs = f.jobs;
  if (o.given("tolerance")) c.tolerance = f.tolerance;
  if (c.tau.empty() && c.n > 1) c.tau.assign(static_cast<std::size_t>(c.n - 1), 0.0);
  if (!o.given("x") && !o.given("config")) throw DomainError("--x is required");
  c.validate();
  return c;
}

void emit(const RunConfig& c, const Table& t) {
  if (c.format == OutputFormat::csv) {
    write_csv(std::cout, t);
    return;
  }
  nlohmann::json doc{{"schema", kSchemaVersion}, {"config", to_json(c)}, {"table", to_json(t)}};
  std::cout << doc.dump(2) << '\n';
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw DomainError("--m: expected a or a:b, got '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order Airy kernels, deformed Fredholm determinants and their asymptotics"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* app;
    CommonFlags flags;
    CommonOptions opts;
  };
  std::map<std::string, Sub> subs;
  auto add = [&](const std::string& name, const std::string& help) -> Sub& {
    Sub& s = subs[name];
    s.app = app.add_subcommand(name, help);
    s.opts = add_common(s.app, s.flags);
    return s;
  };

  add("airy", "higher-order Airy function Ai_{2n+1} (or A_n for tau != 0) on the x grid");
  add("kernel", "kernel K(x, y) on the x grid times the y grid (diagonal without --y)");
  add("det", "F(x; rho) per grid point, cached");
  double scan_h = 1e-2;
  add("scan", "uniform derivative scan of ln F over the x range")
      .app->add_option("--step", scan_h, "derivative stencil step h");
  add("qextract", "|q| from the second log-derivative of F");
  std::string asymp_kind = "logF";
  add("asymp", "asymptotic formulas on the x grid")
      .app->add_option("--kind", asymp_kind, "q_sub, logF, q_super or dlogF_super");
  std::string poles_m = "1:5";
  add("poles", "zeros of F paired with pole estimates (tau = 0)").app->add_option("--m", poles_m, "index range a:b");
  double counting_s = 1.0;
  add("counting", "counting-function statistics at positive x").app->add_option("--s", counting_s, "CLT parameter");
  std::string compare_kind = "logF", compare_m = "1:5";
  CompareOptions compare_opts;
  {
    Sub& s = add("compare", "numeric vs asymptotic residuals with fitted slopes");
    s.app->add_option("--kind", compare_kind, "logF, q_sub, q_super, total, counting or poles");
    s.app->add_option("--step", compare_opts.h, "derivative stencil step h (q_sub)");
    s.app->add_option("--window", compare_opts.window, "envelope window width");
    s.app->add_option("--m", compare_m, "pole index range a:b");
    s.app->add_option("--s", compare_opts.s, "CLT parameter");
  }
  std::string subset = "all", junit_path;
  {
    CLI::App* v = app.add_subcommand("verify", "run the acceptance suite; nonzero exit on any failure");
    v->add_option("--subset", subset, "all, symbolic, numeric or a comma list of criterion ids");
    v->add_option("--junit", junit_path, "write a JUnit XML report here");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand("verify")) {
      AcceptanceOptions options;
      options.only = parse_subset(subset);
      const auto results = run_acceptance(options, [](const CriterionResult& r) {
        std::cout << format_result_line(r) << std::endl;
      });
      if (!junit_path.empty()) {
        std::ofstream out(junit_path);
        if (!out) throw DomainError("cannot write " + junit_path);
        out << junit_xml(results);
      }
      return acceptance_exit_code(results, true);
    }
    for (auto& [name, s] : subs) {
      if (!s.app->parsed()) continue;
      const RunConfig c = build_config(s.flags, s.opts);
      ResultCache cache(c.cache_dir);
      Table t;
      if (name == "airy") t = cmd_airy(c);
      else if (name == "kernel") t = cmd_kernel(c);
      else if (name == "det") t = cmd_det(c, cache);
      else if (name == "scan") t = cmd_scan(c, scan_h, cache);
      else if (name == "qextract") t = cmd_qextract(c);
      else if (name == "asymp") t = cmd_asymp(c, parse_asymp_kind(asymp_kind));
      else if (name == "poles") {
        const auto [lo, hi] = parse_range(poles_m);
        t = cmd_poles(c, lo, hi);
      } else if (name == "counting") t = cmd_counting(c, counting_s);
      else if (name == "compare") {
        std::tie(compare_opts.m_lo, compare_opts.m_hi) = parse_range(compare_m);
        t = cmd_compare(c, parse_compare_kind(compare_kind), compare_opts, cache);
      }
      emit(c, t);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
