// gcauchy: solve geometric Cauchy problems, rerun diagnostics, list the catalog.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gcauchy/errors.hpp"
#include "gcauchy/export.hpp"
#include "gcauchy/pipeline.hpp"

using namespace gcauchy;

namespace {

enum Exit { ok = 0, diagnostics_failed = 1, config = 2, hypothesis = 3, numerical = 4 };

struct Common {
  std::string target;  // problem kind or catalog problem name
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::vector<std::string> sets;
};

void flag(CLI::App* app, Common& c, const std::string& name, const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(
      name, [&c, key](const std::string& v) { c.overrides.emplace_back(key, v); }, help);
}

void add_job_options(CLI::App* app, Common& c) {
  app->add_option("problem", c.target, "problem kind (cmc, cmc-null, cmc-revolution, psph, psph-asymptotic) or catalog name");
  app->add_option("--config", c.config_path, "key = value file")->check(CLI::ExistingFile);
  flag(app, c, "--curve", "curve", "catalog spec name:key=val,... or a CSV path");
  app->add_flag_callback("--geodesic", [&c] { c.overrides.emplace_back("geodesic", "true"); },
                         "use the principal normal as N0");
  flag(app, c, "--H", "H", "mean curvature");
  flag(app, c, "--rho", "rho", "radius for cmc-revolution");
  flag(app, c, "--axis", "axis", "axis type for cmc-revolution");
  flag(app, c, "--alpha", "alpha", "free function alpha(y)");
  flag(app, c, "--beta", "beta", "free function beta(y)");
  flag(app, c, "--t0", "t0", "base parameter on the curve");
  flag(app, c, "--n", "n", "grid nodes per side");
  flag(app, c, "--half-width", "half_width", "grid half-width around the base point");
  flag(app, c, "--lambda0", "lambda0", "comma-separated spectral values");
  flag(app, c, "--truncation", "truncation", "Birkhoff truncation N");
  flag(app, c, "--samples", "samples", "circle samples M");
  flag(app, c, "--steps", "steps_per_unit", "RK4 steps per unit parameter");
  flag(app, c, "--output", "output", "output prefix");
  app->add_option("--set", c.sets, "extra key=value overrides");
}

JobConfig resolve(const Common& c) {
  JobConfig cfg;
  bool catalog = false;
  if (!c.target.empty()) {
    try {
      cfg.problem = parse_problem(c.target);
    } catch (const ConfigError&) {
      cfg = catalog_config(c.target);
      catalog = true;
    }
  }
  if (!c.config_path.empty()) cfg = load_config(c.config_path, cfg);
  if (!c.target.empty() && !catalog) cfg.problem = parse_problem(c.target);
  for (const auto& [k, v] : c.overrides) set_key(cfg, k, v);
  for (const auto& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
    set_key(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  return cfg;
}

std::string prefix_for(const JobConfig& c, double lambda0) {
  return lambda0 == 1 ? c.output : fmt::format("{}.lambda{}", c.output, lambda0);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

template <class W>
std::string render(W writer, const SurfaceSamples& m) {
  std::ostringstream os;
  writer(os, m);
  return os.str();
}

void print_checks(const DiagnosticsReport& d) {
  for (const auto& c : d.checks)
    fmt::print("  {:<34} {:>10.3e}  (tol {:.1e})  {}\n", c.name, c.max, c.tolerance, c.pass ? "pass" : "FAIL");
}

int solve(const Common& common) {
  const JobConfig cfg = resolve(common);
  const Job job = prepare(cfg);
  fmt::print("problem {}: {} data, curve {}\n", to_string(cfg.problem), to_string(job.report.kind),
             cfg.problem == Problem::cmc_revolution ? "(profile circle)" : job.config.curve);
  if (cfg.problem == Problem::cmc_null && job.pair.param_scale != 1)
    fmt::print("x rescaled by {:.6g} so the data carries H = {}\n", job.pair.param_scale, *cfg.H);
  const GridSpec& g = job.grid;
  fmt::print("grid {}x{} on [{:.6g}, {:.6g}] x [{:.6g}, {:.6g}]\n", g.nx, g.ny, g.x_lo, g.x_hi, g.y_lo, g.y_hi);

  DiagnosticsReport all;
  for (double lambda0 : cfg.lambda0) {
    const MeshRun run = solve_mesh(job, lambda0);
    const int total = g.size();
    fmt::print("lambda0 = {}: {:.2f} s, mask coverage {}/{} nodes ({:.2f}%), big-cell failures {}, irregular {}, singular {}\n",
               lambda0, run.seconds, total - run.masked, total, 100.0 * (total - run.masked) / total, run.big_cell,
               run.irregular, run.singular);
    const DiagnosticsReport d = diagnose(job, run.mesh);
    print_checks(d);
    all.checks.insert(all.checks.end(), d.checks.begin(), d.checks.end());
    const std::string p = prefix_for(cfg, lambda0);
    if (cfg.write_obj) write_file(p + ".obj", render(write_obj, run.mesh));
    if (cfg.write_csv) write_file(p + ".csv", render(write_mesh_csv, run.mesh));
    write_file(p + ".frames.csv", render(write_frames_cache, run.mesh));
  }
  write_file(cfg.output + ".json", all.to_json());
  write_file(cfg.output + ".config", to_text(job.config));
  fmt::print("{}\n", all.all_pass() ? "all diagnostics pass" : "some diagnostics FAIL");
  return all.all_pass() ? ok : diagnostics_failed;
}

std::vector<int> parse_levels(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (item.empty() || *end || v < 5) throw ConfigError("--sweep expects grid sizes >= 5, got '" + item + "'");
    out.push_back(static_cast<int>(v));
  }
  if (out.size() < 2) throw ConfigError("--sweep needs at least two grid sizes");
  return out;
}

int sweep(const JobConfig& base, const std::vector<int>& levels) {
  std::vector<DiagnosticsReport> reports;
  for (int n : levels) {
    JobConfig c = base;
    c.nx = c.ny = n;
    const Job job = prepare(c);
    reports.push_back(diagnose(job, solve_mesh(job, c.lambda0.front()).mesh));
  }
  DiagnosticsReport& fine = reports.back();
  std::string head = fmt::format("{:<28}", "check");
  for (int n : levels) head += fmt::format(" {:>11}", fmt::format("n={}", n));
  head += "   rates";
  fmt::print("{}\n", head);
  for (auto& c : fine.checks) {
    std::string row = fmt::format("{:<28}", c.name);
    std::vector<double> maxes;
    for (const auto& r : reports) {
      const CheckReport* x = r.find(c.name);
      maxes.push_back(x ? x->max : std::nan(""));
      row += fmt::format(" {:>11.3e}", maxes.back());
    }
    row += "  ";
    for (std::size_t k = 1; k < maxes.size(); ++k) {
      // rate per halving of h, whatever the refinement factor
      const double ratio = static_cast<double>(levels[k] - 1) / (levels[k - 1] - 1);
      const double rate = std::log(maxes[k - 1] / maxes[k]) / std::log(ratio);
      row += fmt::format(" {:6.2f}", rate);
      c.rate = rate;
    }
    fmt::print("{}\n", row);
  }
  write_file(base.output + ".sweep.json", fine.to_json());
  return fine.all_pass() ? ok : diagnostics_failed;
}

int check(const Common& common, const std::string& sweep_levels) {
  const JobConfig cfg = resolve(common);
  if (!sweep_levels.empty()) return sweep(cfg, parse_levels(sweep_levels));
  const Job job = prepare(cfg);
  DiagnosticsReport all;
  for (double lambda0 : cfg.lambda0) {
    const std::string p = prefix_for(cfg, lambda0);
    const SurfaceSamples mesh = read_mesh(p + ".csv", p + ".frames.csv");
    if (mesh.grid.nx != job.grid.nx || mesh.grid.ny != job.grid.ny)
      throw ConfigError("mesh grid does not match the config");
    const DiagnosticsReport d = diagnose(job, mesh);
    fmt::print("{} (lambda0 = {}):\n", p, lambda0);
    print_checks(d);
    all.checks.insert(all.checks.end(), d.checks.begin(), d.checks.end());
  }
  write_file(cfg.output + ".check.json", all.to_json());
  fmt::print("{}\n", all.all_pass() ? "all diagnostics pass" : "some diagnostics FAIL");
  return all.all_pass() ? ok : diagnostics_failed;
}

int catalog() {
  fmt::print("problems:\n");
  for (const auto& p : problem_catalog()) fmt::print("  {:<22} {}\n", p.name, p.description);
  fmt::print("curves:\n");
  for (const auto& c : curve_catalog()) {
    std::string params;
    for (const auto& [k, v] : c.defaults) params += fmt::format("{}{}={}", params.empty() ? "" : ",", k, v);
    fmt::print("  {:<10} {:<18} {:<12} {}\n", c.metric == Metric::minkowski ? "minkowski" : "euclidean", c.name, params,
               c.description);
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric Cauchy problems for timelike CMC and pseudospherical surfaces"};
  app.require_subcommand(1);
  Common solve_opts, check_opts;
  std::string sweep_levels;
  auto* s = app.add_subcommand("solve", "build the surface, write meshes and diagnostics");
  add_job_options(s, solve_opts);
  auto* c = app.add_subcommand("check", "rerun diagnostics on written meshes");
  add_job_options(c, check_opts);
  c->add_option("--sweep", sweep_levels, "recompute at these grid sizes and print a convergence table");
  app.add_subcommand("catalog", "list catalog problems and curves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config;
  }
  try {
    if (s->parsed()) return solve(solve_opts);
    if (c->parsed()) return check(check_opts, sweep_levels);
    return catalog();
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return config;
  } catch (const HypothesisViolation& e) {
    fmt::print(stderr, "hypothesis violated: {}\n", e.what());
    return hypothesis;
  } catch (const NumericalFailure& e) {
    fmt::print(stderr, "numerical failure: {}\n", e.what());
    return numerical;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return config;
  }
}
