#pragma once

// Job configuration: a flat key = value file plus command-line overrides.

#include <optional>
#include <string>
#include <vector>

namespace gcauchy {

enum class Problem { cmc, cmc_null, cmc_revolution, psph, psph_asymptotic };
const char* to_string(Problem p);
Problem parse_problem(const std::string& s);

struct Tolerances {
  double mean_curvature = 1e-4;
  double gauss_curvature = 1e-2;
  double cauchy = 1e-5;
  double geodesic = 1e-3;
  double sine_gordon = 1e-3;
  double codazzi = 1e-6;
  double normal = 1e-3;  // Sym normals vs cross products
};

struct JobConfig {
  Problem problem = Problem::cmc;
  std::string curve;          // catalog spec or CSV path
  bool geodesic = false;      // N0 := principal normal
  std::optional<double> H;    // CMC
  double rho = 1;             // surfaces of revolution
  std::string axis = "timelike";
  std::string alpha, beta;    // expressions in y
  double t0 = 0;              // base parameter on the curve

  // grid: centred on the base point unless explicit ranges are given
  int nx = 81, ny = 81;
  std::optional<double> half_width;
  std::optional<double> x_min, x_max, y_min, y_max;

  int truncation = 16;
  int samples = 128;
  int steps_per_unit = 800;
  double birkhoff_residual = 1e-6;
  double condition_limit = 1e12;
  double data_tolerance = 1e-8;
  std::vector<double> lambda0{1};

  Tolerances tol;

  std::string output = "gcauchy_out";  // prefix for .obj .csv .json .frames.csv
  bool write_obj = true, write_csv = true;
};

// one "key = value" assignment; throws ConfigError on unknown keys or bad values
void set_key(JobConfig& c, const std::string& key, const std::string& value);

// '#' starts a comment; blank lines ignored
JobConfig parse_config_text(const std::string& text, JobConfig base = {});
JobConfig load_config(const std::string& path, JobConfig base = {});

// every key with its current value, in a fixed order; parse_config_text inverts it
std::string to_text(const JobConfig& c);

// default grid half-width per problem when none is configured
double default_half_width(const JobConfig& c);

}  // namespace gcauchy
