#include "gcauchy/pipeline.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "gcauchy/errors.hpp"
#include "gcauchy/expression.hpp"

namespace gcauchy {

namespace {

std::string default_curve(Problem p) {
  switch (p) {
    case Problem::cmc: return "timelike-helix";
    case Problem::cmc_null: return "null-line";
    case Problem::psph: return "ellipse";
    case Problem::psph_asymptotic: return "asymptotic-helix";
    case Problem::cmc_revolution: return "";
  }
  return "";
}

ComplexFn expression_fn(const std::string& key, const std::string& src, bool real) {
  if (src.empty()) throw ConfigError(key + " is required for this problem");
  Expression e = [&] {
    try {
      return Expression::parse(src);
    } catch (const ParseError& err) {
      throw ParseError(key + ": " + err.what(), err.position);
    }
  }();
  if (real && e.uses_i()) throw ConfigError(key + " must be real for this problem");
  return [e](double y) { return e(y); };
}

double required_H(const JobConfig& c) {
  if (!c.H) throw ConfigError("H is required for CMC problems");
  if (*c.H == 0) throw ConfigError("H must be nonzero");
  return *c.H;
}

GridSpec make_grid(const JobConfig& c, double x0, double y0) {
  GridSpec g;
  g.nx = c.nx;
  g.ny = c.ny;
  const int given = !!c.x_min + !!c.x_max + !!c.y_min + !!c.y_max;
  if (given == 4) {
    g.x_lo = *c.x_min, g.x_hi = *c.x_max, g.y_lo = *c.y_min, g.y_hi = *c.y_max;
    if (!(g.x_lo < g.x_hi && g.y_lo < g.y_hi)) throw ConfigError("grid ranges must be increasing");
  } else if (given != 0) {
    throw ConfigError("give all of x_min, x_max, y_min, y_max or none");
  } else {
    const double L = c.half_width.value_or(default_half_width(c));
    g.x_lo = x0 - L, g.x_hi = x0 + L, g.y_lo = y0 - L, g.y_hi = y0 + L;
  }
  return g;
}

std::string suffix(double lambda0) { return lambda0 == 1 ? "" : fmt::format("[lambda0={}]", lambda0); }

}  // namespace

Job prepare(const JobConfig& c) {
  Job job;
  job.config = c;
  if (c.samples < 4 * c.truncation + 2)
    throw ConfigError(fmt::format("samples ({}) must be at least 4 truncation + 2 ({})", c.samples, 4 * c.truncation + 2));

  if (c.problem == Problem::cmc_revolution) {
    if (c.axis == "spacelike") throw ConfigError("only the timelike axis is implemented for cmc-revolution");
    if (c.axis == "null") throw ConfigError("the null-axis example is the cmc-null problem (null-line curve)");
    const double H = required_H(c);
    job.data = ingest_curve(CurveSpec::parse(fmt::format("circle:r={:.17g}", c.rho)), {Metric::minkowski, false});
    job.pair = potential_revolution_timelike(c.rho, H);
    job.report.kind = CaseKind::cmc_spacelike;
    job.report.valid = true;
    job.report.message = "surface of revolution, timelike axis";
    job.grid = make_grid(c, job.pair.x0, job.pair.y0);
    return job;
  }

  const bool psph = c.problem == Problem::psph || c.problem == Problem::psph_asymptotic;
  if (c.geodesic && !psph) throw ConfigError("geodesic applies to psph problems only");
  const std::string curve = c.curve.empty() ? default_curve(c.problem) : c.curve;
  job.data = ingest_curve(CurveSpec::parse(curve), {psph ? Metric::euclidean : Metric::minkowski, c.geodesic});
  job.config.curve = curve;

  // parameter range the grid will touch along the curve
  const double L = c.half_width.value_or(default_half_width(c));
  double t_lo = c.t0 - L, t_hi = c.t0 + L;
  if (c.x_min && c.x_max) t_lo = *c.x_min, t_hi = *c.x_max;
  t_lo = std::max(t_lo, job.data.t_min);
  t_hi = std::min(t_hi, job.data.t_max);

  ClassifyOptions co;
  co.tolerance = c.data_tolerance;
  job.report = classify(job.data, t_lo, t_hi, co);
  const CaseKind k = job.report.kind;

  switch (c.problem) {
    case Problem::cmc: {
      if (k == CaseKind::cmc_null) throw HypothesisViolation("the curve is null: use the cmc-null problem");
      job.pair = potential_cmc_noncharacteristic(job.data, required_H(c), job.report, c.t0);
      break;
    }
    case Problem::cmc_null: {
      if (k != CaseKind::cmc_null)
        throw HypothesisViolation(std::string("cmc-null needs a null curve, the data is ") + to_string(k));
      const std::string beta = c.beta.empty() ? "0" : c.beta;
      job.pair = potential_cmc_null(job.data, required_H(c), expression_fn("alpha", c.alpha, true),
                                    expression_fn("beta", beta, true), c.t0, &job.null_report);
      if (job.pair.param_scale != 1) {
        // the rescaled grid reaches further along the curve
        const double s = job.pair.param_scale;
        classify(job.data, std::max(c.t0 - s * (c.t0 - t_lo), job.data.t_min),
                 std::min(c.t0 + s * (t_hi - c.t0), job.data.t_max), co);
      }
      break;
    }
    case Problem::psph: {
      if (k == CaseKind::psph_asymptotic)
        throw HypothesisViolation("the curve is asymptotic: use the psph-asymptotic problem");
      job.pair = potential_psph_noncharacteristic(job.data, job.report, c.t0);
      break;
    }
    case Problem::psph_asymptotic: {
      if (k != CaseKind::psph_asymptotic)
        throw HypothesisViolation(std::string("psph-asymptotic needs asymptotic data, the data is ") + to_string(k));
      job.pair = potential_psph_characteristic(job.data, expression_fn("alpha", c.alpha, false), c.t0, t_lo, t_hi);
      break;
    }
    case Problem::cmc_revolution: break;
  }
  job.grid = make_grid(c, job.pair.x0, job.pair.y0);
  return job;
}

FrameGenOptions frame_options(const JobConfig& c, double lambda0) {
  FrameGenOptions o;
  o.samples = c.samples;
  o.lambda0 = lambda0;
  o.birkhoff.truncation = c.truncation;
  o.birkhoff.residual_limit = c.birkhoff_residual;
  o.birkhoff.condition_limit = c.condition_limit;
  o.integrate.steps_per_unit = c.steps_per_unit;
  return o;
}

MeshRun solve_mesh(const Job& job, double lambda0) {
  const auto t = std::chrono::steady_clock::now();
  const FrameGenOptions o = frame_options(job.config, lambda0);
  FrameField ff = build_frame_field(job.pair, job.grid, o);
  apply_gauges(ff, o);
  MeshRun r;
  r.mesh = sym_surface(ff);
  for (const auto& n : ff.nodes) {
    r.big_cell += n.state == NodeState::big_cell;
    r.irregular += n.state == NodeState::irregular;
    r.singular += n.state == NodeState::singular;
    if (n.state != NodeState::big_cell) r.max_birkhoff_residual = std::max(r.max_birkhoff_residual, n.residual);
  }
  r.masked = r.big_cell + r.irregular + r.singular;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
  return r;
}

DiagnosticsReport diagnose(const Job& job, const SurfaceSamples& mesh) {
  const Tolerances& tol = job.config.tol;
  DiagnosticsReport d;
  const bool at_one = mesh.lambda0 == 1;
  const bool psph = mesh.metric == Metric::euclidean;
  if (psph) {
    d.checks.push_back(gauss_curvature(mesh, -1, tol.gauss_curvature).report);
    const auto sg = sine_gordon_residual(mesh, tol.sine_gordon, tol.codazzi);
    d.checks.push_back(sg.residual);
    d.checks.push_back(sg.codazzi);
  } else {
    d.checks.push_back(mean_curvature(mesh, job.pair.H, tol.mean_curvature).report);
  }
  if (at_one) {
    IntegrateOptions io;
    io.steps_per_unit = job.config.steps_per_unit;
    d.checks.push_back(cauchy_residual(mesh, job.data, job.pair, tol.cauchy, io));
    if (job.pair.kind == CaseKind::psph_principal) d.checks.push_back(geodesic_residual(mesh, job.data, job.pair, tol.geodesic));
  }
  d.checks.push_back(normal_unit(mesh));
  d.checks.push_back(normal_consistency(mesh, tol.normal));
  for (auto& c : d.checks) c.name += suffix(mesh.lambda0);
  return d;
}

const std::vector<CatalogProblem>& problem_catalog() {
  static const std::vector<CatalogProblem> list{
      {"cylinder", "timelike-axis surface of revolution with rho H = -1/2",
       "problem = cmc-revolution\nrho = 1\nH = -0.5\nhalf_width = 1\n"},
      {"null-rational", "null-axis example: the rational surface from alpha = 1, beta = 0",
       "problem = cmc-null\ncurve = null-line\nalpha = 1\nbeta = 0\nH = 0.5\nhalf_width = 0.5\n"},
      {"null-wavy", "null-line data with y-dependent free functions",
       "problem = cmc-null\ncurve = null-line\nalpha = 1\nbeta = 0.3*sin(y)\nH = 0.5\nhalf_width = 0.5\n"},
      {"timelike-helix", "timelike CMC surface through a timelike helix",
       "problem = cmc\ncurve = timelike-helix\nH = 0.7\nhalf_width = 0.5\n"},
      {"hyperbola", "timelike CMC surface through a timelike hyperbola",
       "problem = cmc\ncurve = hyperbola\nH = 0.5\nhalf_width = 0.5\n"},
      {"spacelike-circle", "spacelike circle with timelike V: the cylinder again, from the general potentials",
       "problem = cmc\ncurve = circle\nH = -0.5\nhalf_width = 0.5\n"},
      {"spacelike-line", "spacelike line with V = e0", "problem = cmc\ncurve = spacelike-line\nH = 0.7\nhalf_width = 0.5\n"},
      {"ellipse-geodesic", "K = -1 surface containing the ellipse as a geodesic principal curve",
       "problem = psph\ncurve = ellipse:a=1,b=2\ngeodesic = true\nhalf_width = 0.6\n"},
      {"parabola-geodesic", "K = -1 surface containing the parabola as a geodesic principal curve",
       "problem = psph\ncurve = parabola\ngeodesic = true\nhalf_width = 0.6\n"},
      {"circle-geodesic", "K = -1 surface containing a circle as a geodesic",
       "problem = psph\ncurve = circle:r=2\ngeodesic = true\nhalf_width = 0.5\n"},
      {"catenary-geodesic", "K = -1 surface containing the catenary as a geodesic",
       "problem = psph\ncurve = catenary\ngeodesic = true\nhalf_width = 0.5\n"},
      {"cubic-geodesic", "K = -1 surface containing the nodal cubic as a geodesic",
       "problem = psph\ncurve = cubic\ngeodesic = true\nhalf_width = 0.3\n"},
      {"lemniscate-geodesic", "K = -1 surface containing the lemniscate as a geodesic",
       "problem = psph\ncurve = lemniscate\ngeodesic = true\nhalf_width = 0.5\n"},
      {"helix-general", "K = -1 surface from a helix with a non-principal normal",
       "problem = psph\ncurve = helix\nhalf_width = 0.5\n"},
      {"asymptotic-helix", "helix as an asymptotic line, alpha = 1/2",
       "problem = psph-asymptotic\ncurve = asymptotic-helix\nalpha = 0.5\nhalf_width = 0.5\n"},
  };
  return list;
}

JobConfig catalog_config(const std::string& name) {
  for (const auto& p : problem_catalog())
    if (p.name == name) {
      JobConfig c = parse_config_text(p.config);
      c.output = name;
      return c;
    }
  throw ConfigError("unknown catalog problem '" + name + "'");
}

}  // namespace gcauchy
