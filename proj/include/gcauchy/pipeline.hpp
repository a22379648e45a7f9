#pragma once

// ingest -> classify -> potentials -> frames -> Sym -> diagnostics

#include <string>
#include <vector>

#include "gcauchy/cauchydata.hpp"
#include "gcauchy/config.hpp"
#include "gcauchy/surface.hpp"

namespace gcauchy {

struct Job {
  JobConfig config;
  CurveData data;  // the initial curve (the profile circle for revolution)
  CaseReport report;
  NullReport null_report;
  PotentialPair pair;
  GridSpec grid;
};

// everything up to the potentials; throws ConfigError / HypothesisViolation
Job prepare(const JobConfig& c);

FrameGenOptions frame_options(const JobConfig& c, double lambda0);

struct MeshRun {
  SurfaceSamples mesh;
  int masked = 0, big_cell = 0, irregular = 0, singular = 0;
  double max_birkhoff_residual = 0;
  double seconds = 0;
};
MeshRun solve_mesh(const Job& job, double lambda0);

// the checks that apply to the job's kind; names get a lambda0 suffix off 1
DiagnosticsReport diagnose(const Job& job, const SurfaceSamples& mesh);

struct CatalogProblem {
  std::string name;
  std::string description;
  std::string config;  // key = value text
};
const std::vector<CatalogProblem>& problem_catalog();
JobConfig catalog_config(const std::string& name);

}  // namespace gcauchy
