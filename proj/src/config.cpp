#include "gcauchy/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "gcauchy/errors.hpp"

namespace gcauchy {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double number(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || !std::isfinite(x)) throw ConfigError(fmt::format("{}: '{}' is not a number", key, v));
  return x;
}

int integer(const std::string& key, const std::string& v, int lo) {
  const double x = number(key, v);
  if (x != static_cast<int>(x) || x < lo) throw ConfigError(fmt::format("{}: expected an integer >= {}, got '{}'", key, lo, v));
  return static_cast<int>(x);
}

double positive(const std::string& key, const std::string& v) {
  const double x = number(key, v);
  if (x <= 0) throw ConfigError(fmt::format("{}: must be positive, got '{}'", key, v));
  return x;
}

bool boolean(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, v));
}

std::string g17(double x) { return fmt::format("{:.17g}", x); }
std::string opt(const std::optional<double>& x) { return x ? g17(*x) : ""; }

}  // namespace

const char* to_string(Problem p) {
  switch (p) {
    case Problem::cmc: return "cmc";
    case Problem::cmc_null: return "cmc-null";
    case Problem::cmc_revolution: return "cmc-revolution";
    case Problem::psph: return "psph";
    case Problem::psph_asymptotic: return "psph-asymptotic";
  }
  return "?";
}

Problem parse_problem(const std::string& s) {
  for (Problem p : {Problem::cmc, Problem::cmc_null, Problem::cmc_revolution, Problem::psph, Problem::psph_asymptotic})
    if (s == to_string(p)) return p;
  throw ConfigError("unknown problem '" + s + "' (cmc, cmc-null, cmc-revolution, psph, psph-asymptotic)");
}

void set_key(JobConfig& c, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in), v = trim(value_in);
  auto maybe = [&](std::optional<double>& slot) {
    if (v.empty())
      slot.reset();
    else
      slot = number(key, v);
  };
  if (key == "problem") c.problem = parse_problem(v);
  else if (key == "curve") c.curve = v;
  else if (key == "geodesic") c.geodesic = boolean(key, v);
  else if (key == "H") maybe(c.H);
  else if (key == "rho") c.rho = positive(key, v);
  else if (key == "axis") {
    if (v != "timelike" && v != "spacelike" && v != "null") throw ConfigError("axis: expected timelike, spacelike or null");
    c.axis = v;
  }
  else if (key == "alpha") c.alpha = v;
  else if (key == "beta") c.beta = v;
  else if (key == "t0") c.t0 = number(key, v);
  else if (key == "n") c.nx = c.ny = integer(key, v, 5);
  else if (key == "nx") c.nx = integer(key, v, 5);
  else if (key == "ny") c.ny = integer(key, v, 5);
  else if (key == "half_width") {
    maybe(c.half_width);
    if (c.half_width && *c.half_width <= 0) throw ConfigError("half_width: must be positive");
  }
  else if (key == "x_min") maybe(c.x_min);
  else if (key == "x_max") maybe(c.x_max);
  else if (key == "y_min") maybe(c.y_min);
  else if (key == "y_max") maybe(c.y_max);
  else if (key == "truncation") c.truncation = integer(key, v, 1);
  else if (key == "samples") c.samples = integer(key, v, 8);
  else if (key == "steps_per_unit") c.steps_per_unit = integer(key, v, 1);
  else if (key == "birkhoff_residual") c.birkhoff_residual = positive(key, v);
  else if (key == "condition_limit") c.condition_limit = positive(key, v);
  else if (key == "data_tolerance") c.data_tolerance = positive(key, v);
  else if (key == "lambda0") {
    c.lambda0.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) c.lambda0.push_back(positive(key, item));
    if (c.lambda0.empty()) throw ConfigError("lambda0: empty list");
  }
  else if (key == "tol.mean_curvature") c.tol.mean_curvature = positive(key, v);
  else if (key == "tol.gauss_curvature") c.tol.gauss_curvature = positive(key, v);
  else if (key == "tol.cauchy") c.tol.cauchy = positive(key, v);
  else if (key == "tol.geodesic") c.tol.geodesic = positive(key, v);
  else if (key == "tol.sine_gordon") c.tol.sine_gordon = positive(key, v);
  else if (key == "tol.codazzi") c.tol.codazzi = positive(key, v);
  else if (key == "tol.normal") c.tol.normal = positive(key, v);
  else if (key == "output") c.output = v;
  else if (key == "write_obj") c.write_obj = boolean(key, v);
  else if (key == "write_csv") c.write_csv = boolean(key, v);
  else throw ConfigError("unknown key '" + key + "'");
}

JobConfig parse_config_text(const std::string& text, JobConfig c) {
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("line {}: expected key = value", no));
    try {
      set_key(c, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("line {}: {}", no, e.what()));
    }
  }
  return c;
}

JobConfig load_config(const std::string& path, JobConfig base) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

std::string to_text(const JobConfig& c) {
  std::string lam;
  for (std::size_t k = 0; k < c.lambda0.size(); ++k) lam += (k ? "," : "") + g17(c.lambda0[k]);
  std::string s;
  auto put = [&](const char* k, const std::string& v) { s += fmt::format("{} = {}\n", k, v); };
  put("problem", to_string(c.problem));
  put("curve", c.curve);
  put("geodesic", c.geodesic ? "true" : "false");
  put("H", opt(c.H));
  put("rho", g17(c.rho));
  put("axis", c.axis);
  put("alpha", c.alpha);
  put("beta", c.beta);
  put("t0", g17(c.t0));
  put("nx", std::to_string(c.nx));
  put("ny", std::to_string(c.ny));
  put("half_width", opt(c.half_width));
  put("x_min", opt(c.x_min));
  put("x_max", opt(c.x_max));
  put("y_min", opt(c.y_min));
  put("y_max", opt(c.y_max));
  put("truncation", std::to_string(c.truncation));
  put("samples", std::to_string(c.samples));
  put("steps_per_unit", std::to_string(c.steps_per_unit));
  put("birkhoff_residual", g17(c.birkhoff_residual));
  put("condition_limit", g17(c.condition_limit));
  put("data_tolerance", g17(c.data_tolerance));
  put("lambda0", lam);
  put("tol.mean_curvature", g17(c.tol.mean_curvature));
  put("tol.gauss_curvature", g17(c.tol.gauss_curvature));
  put("tol.cauchy", g17(c.tol.cauchy));
  put("tol.geodesic", g17(c.tol.geodesic));
  put("tol.sine_gordon", g17(c.tol.sine_gordon));
  put("tol.codazzi", g17(c.tol.codazzi));
  put("tol.normal", g17(c.tol.normal));
  put("output", c.output);
  put("write_obj", c.write_obj ? "true" : "false");
  put("write_csv", c.write_csv ? "true" : "false");
  return s;
}

double default_half_width(const JobConfig& c) { return c.problem == Problem::cmc_revolution ? 1.0 : 0.5; }

}  // namespace gcauchy
