#pragma once

// Classification of curve data and the boundary potentials built from it.

#include <functional>
#include <string>

#include "gcauchy/curve.hpp"
#include "gcauchy/minkalg.hpp"

namespace gcauchy {

using ComplexFn = std::function<cplx(double)>;

// m lambda^-1 + z + p lambda
struct Laurent3 {
  Mat2 m = Mat2::zero(), z = Mat2::zero(), p = Mat2::zero();
  Mat2 at(cplx lambda) const { return m * (1.0 / lambda) + z + p * lambda; }
  // lambda d/dlambda
  Mat2 lambda_derivative(cplx lambda) const { return p * lambda - m * (1.0 / lambda); }
};
using LoopPotential = std::function<Laurent3(double)>;

enum class CaseKind { cmc_timelike, cmc_spacelike, cmc_null, psph_principal, psph_general, psph_asymptotic };
const char* to_string(CaseKind k);

struct ClassifyOptions {
  double tolerance = 1e-8;  // relative; sampled curves get sampled_tolerance
  double sampled_tolerance = 1e-6;
  int samples = 201;
};

struct CaseReport {
  CaseKind kind = CaseKind::cmc_timelike;
  double t_lo = 0, t_hi = 0;
  // CMC: <f',f'>/|f'|^2 range, |<V,V> + <f',f'>| and |<f',V>| maxima
  // (for null data: <f',V> range and |<V,V>|)
  // psph: <f',N0'> range, |f' x N0'| range, |<f',N0>| and ||N0| - 1| maxima
  double causal_min = 0, causal_max = 0;
  double char_min = 0, char_max = 0;
  double parallel_min = 0, parallel_max = 0;
  double metric_defect = 0, orthogonality_defect = 0;
  bool normal_flipped = false;  // psph: N0 flipped so that <f',N0'> > 0
  bool valid = false;
  std::string message;
};

// Throws MixedType / HypothesisViolation naming the offending range.
CaseReport classify(const CurveData& data, double t_lo, double t_hi, const ClassifyOptions& opt = {});

// Rigid motion taking model coordinates (frame = identity at the base
// point, surface through the origin) to the user's coordinates.
// The linear part may be improper (reflected asymptotic data).
struct Placement {
  Coords3 origin{0, 0, 0};
  Mat3 linear{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  double normal_sign = 1;
  Coords3 point(const Coords3& model) const;
  Coords3 vector(const Coords3& model) const;
};

// How F-(y) relates to F+(x): computed from psi, or reused from the chi path.
enum class PsiRelation { independent, mirror, same };

struct PotentialPair {
  RealForm form = RealForm::split;
  LoopPotential chi, psi;
  PsiRelation relation = PsiRelation::independent;  // mirror: psi(y) = -chi(-y)
  double x0 = 0, y0 = 0;                            // F+(x0) = I, F-(y0) = I
  double H = 0;                                     // CMC only
  CaseKind kind = CaseKind::cmc_timelike;
  Placement placement;
  // node coordinate -> curve parameter along the initial curve:
  // t = t0 + param_scale * (x - x0)
  double t0 = 0, param_scale = 1;
  bool regular = true;
  std::string notes;
};

// frame of the data (columns E0,E1,E2 or E1,E2,N) and its derivative
FrameJet cmc_data_frame(const CurveJet& j, CaseKind kind);
// X = F0^{-1} F0' of the lifted frame at t
Mat2 cmc_frame_log_derivative(const CurveJet& j, CaseKind kind);

PotentialPair potential_cmc_noncharacteristic(const CurveData& data, double H, const CaseReport& report,
                                              double t0);

struct NullReport {
  double implied_H = 0;    // from the data before rescaling
  double param_scale = 1;  // x -> t0 + k x makes the data carry the requested H
  double eps2 = 1;
  double alpha_required = 0;
};
PotentialPair potential_cmc_null(const CurveData& data, double H, const ComplexFn& alpha, const ComplexFn& beta,
                                 double t0, NullReport* report = nullptr);

PotentialPair potential_revolution_timelike(double rho, double H);

struct PsphScalars {
  double alpha = 0, beta = 0, theta = 0, theta_v = 0;
};
// scalars along the curve; flip multiplies N0 by -1 first
PsphScalars psph_scalars(const CurveJet& j, CaseKind kind, bool flip);
Mat3 psph_data_frame(const CurveJet& j, CaseKind kind, bool flip);
Laurent3 psph_noncharacteristic_potential(const PsphScalars& s);

PotentialPair potential_psph_noncharacteristic(const CurveData& data, const CaseReport& report, double t0);
PotentialPair potential_psph_characteristic(const CurveData& data, const ComplexFn& alpha, double t0,
                                            double t_lo, double t_hi);

}  // namespace gcauchy
