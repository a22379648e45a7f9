#pragma once

// Quantitative checks on a surface mesh: curvature estimates, reproduction
// of the Cauchy data, geodesic and sine-Gordon residuals.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcauchy/framegen.hpp"

namespace gcauchy {

struct CheckReport {
  std::string name;
  double max = 0, mean = 0;
  int count = 0;     // nodes that entered the statistics
  int excluded = 0;  // masked, singular or boundary stencils skipped
  double tolerance = 0;
  std::optional<double> rate;  // observed order under refinement
  bool pass = false;
  std::string note;

  // max <= tolerance with at least one node evaluated
  void finish();
};

struct DiagnosticsReport {
  std::vector<CheckReport> checks;

  bool all_pass() const;
  const CheckReport* find(std::string_view name) const;
  CheckReport* find(std::string_view name);
  // two-space indented JSON, keys in a fixed order
  std::string to_json() const;
};

// per-node estimate; NaN where no stencil was available
struct FieldEstimate {
  std::vector<double> value;
  CheckReport report;
};

// 2 <f_xy, N> / (eps e^omega) with eps e^omega from the stored gauge
// (2 <f_x, f_y> when the mesh carries no gauge scalars)
FieldEstimate mean_curvature(const SurfaceSamples& mesh, double target, double tol = 1e-4);

// (LN - M^2) / (EG - F^2) from central differences and the mesh normals.
// Nodes with sin(phi) < singular_tol are excluded and counted.
FieldEstimate gauss_curvature(const SurfaceSamples& mesh, double target = -1, double tol = 1e-2,
                              double singular_tol = 1e-6);

// position along the initial curve and, where prescribed, the transverse
// derivative (CMC) or the normal (pseudospherical); null and asymptotic data
// are checked along both lines through the base point
CheckReport cauchy_residual(const SurfaceSamples& mesh, const CurveData& data, const PotentialPair& pair,
                            double tol = 1e-5, const IntegrateOptions& opt = {});

// |component of f0'' tangent to the mesh and normal to f0'| / |f0''|
CheckReport geodesic_residual(const SurfaceSamples& mesh, const CurveData& data, const PotentialPair& pair,
                              double tol = 1e-3);

struct SineGordonReport {
  CheckReport residual;  // phi_xy - |f_x||f_y| sin phi
  CheckReport codazzi;   // d_y |f_x| and d_x |f_y|
};
SineGordonReport sine_gordon_residual(const SurfaceSamples& mesh, double tol = 1e-3, double codazzi_tol = 1e-6);

// Sym normals: unit length, and agreement with normalized f_x x f_y
CheckReport normal_unit(const SurfaceSamples& mesh, double tol = 1e-8);
CheckReport normal_consistency(const SurfaceSamples& mesh, double tol = 1e-3);

// log2(coarse / fine) for a halving of h
double convergence_rate(double coarse, double fine);

}  // namespace gcauchy
