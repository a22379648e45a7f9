#include "gcauchy/cauchydata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "gcauchy/errors.hpp"

namespace gcauchy {

namespace {

using C3 = Coords3;

C3 add(const C3& a, const C3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
C3 sub(const C3& a, const C3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
C3 mul(double s, const C3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double edot(const C3& a, const C3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double enorm(const C3& a) { return std::sqrt(edot(a, a)); }
C3 ecross(const C3& u, const C3& v) { return cross(Metric::euclidean, u, v); }
double ldot(const C3& a, const C3& b) { return ip(Metric::minkowski, a, b); }
C3 lcross(const C3& u, const C3& v) { return cross(Metric::minkowski, u, v); }

double sgn(double x) { return x < 0 ? -1.0 : 1.0; }

std::vector<double> sample_points(double lo, double hi, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return t;
}

// [first, last] parameter range where pred holds, for error messages
std::string range_where(const std::vector<double>& t, const std::vector<bool>& bad) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (bad[i]) lo = std::min(lo, t[i]), hi = std::max(hi, t[i]);
  return fmt::format("t in [{:.6g}, {:.6g}]", lo, hi);
}

CurveJet flipped(CurveJet j) {
  j.w = mul(-1, j.w);
  j.dw = mul(-1, j.dw);
  j.ddw = mul(-1, j.ddw);
  return j;
}

}  // namespace

const char* to_string(CaseKind k) {
  switch (k) {
    case CaseKind::cmc_timelike: return "cmc-timelike";
    case CaseKind::cmc_spacelike: return "cmc-spacelike";
    case CaseKind::cmc_null: return "cmc-null";
    case CaseKind::psph_principal: return "psph-principal";
    case CaseKind::psph_general: return "psph-general";
    case CaseKind::psph_asymptotic: return "psph-asymptotic";
  }
  return "?";
}

Coords3 Placement::point(const Coords3& model) const { return add(origin, mat3_apply(linear, model)); }
Coords3 Placement::vector(const Coords3& model) const { return mat3_apply(linear, model); }

CaseReport classify(const CurveData& data, double t_lo, double t_hi, const ClassifyOptions& opt) {
  const double tol = data.analytic ? opt.tolerance : opt.sampled_tolerance;
  CaseReport r;
  r.t_lo = t_lo;
  r.t_hi = t_hi;
  const auto t = sample_points(t_lo, t_hi, std::max(2, opt.samples));
  const int n = static_cast<int>(t.size());
  std::vector<CurveJet> jets(n);
  for (int i = 0; i < n; ++i) jets[i] = data.at(t[i]);

  for (int i = 0; i < n; ++i)
    if (enorm(jets[i].df) < 1e-12) throw HypothesisViolation(fmt::format("curve is not regular at t = {:.6g}", t[i]));

  if (data.metric == Metric::minkowski) {
    std::vector<double> causal(n);
    for (int i = 0; i < n; ++i) {
      const auto& j = jets[i];
      causal[i] = ldot(j.df, j.df) / edot(j.df, j.df);
    }
    r.causal_min = *std::min_element(causal.begin(), causal.end());
    r.causal_max = *std::max_element(causal.begin(), causal.end());
    std::vector<bool> tl(n), sl(n), nl(n);
    for (int i = 0; i < n; ++i) {
      tl[i] = causal[i] < -tol;
      sl[i] = causal[i] > tol;
      nl[i] = !tl[i] && !sl[i];
    }
    const bool all_tl = std::all_of(tl.begin(), tl.end(), [](bool b) { return b; });
    const bool all_sl = std::all_of(sl.begin(), sl.end(), [](bool b) { return b; });
    const bool all_nl = std::all_of(nl.begin(), nl.end(), [](bool b) { return b; });
    if (!all_tl && !all_sl && !all_nl) {
      std::vector<bool> other(n);
      for (int i = 0; i < n; ++i) other[i] = tl[i] != tl[0] || sl[i] != sl[0];
      throw MixedType("curve changes causal type (mixed-type data is not supported): " + range_where(t, other));
    }
    if (all_nl) {
      r.kind = CaseKind::cmc_null;
      std::vector<double> fv(n);
      for (int i = 0; i < n; ++i) {
        const auto& j = jets[i];
        const double scale = enorm(j.df) * enorm(j.w);
        fv[i] = ldot(j.df, j.w) / scale;
        r.metric_defect = std::max(r.metric_defect, std::abs(ldot(j.w, j.w)) / edot(j.w, j.w));
      }
      r.char_min = *std::min_element(fv.begin(), fv.end());
      r.char_max = *std::max_element(fv.begin(), fv.end());
      if (r.metric_defect > tol) throw HypothesisViolation("null data needs a null field V");
      if (!(r.char_min > tol || r.char_max < -tol)) {
        std::vector<bool> bad(n);
        for (int i = 0; i < n; ++i) bad[i] = std::abs(fv[i]) <= tol || sgn(fv[i]) != sgn(fv[0]);
        throw HypothesisViolation("<f0', V> must not vanish or change sign: " + range_where(t, bad));
      }
    } else {
      r.kind = all_tl ? CaseKind::cmc_timelike : CaseKind::cmc_spacelike;
      std::vector<bool> bad(n);
      for (int i = 0; i < n; ++i) {
        const auto& j = jets[i];
        const double scale = edot(j.df, j.df);
        const double md = std::abs(ldot(j.w, j.w) + ldot(j.df, j.df)) / scale;
        const double od = std::abs(ldot(j.df, j.w)) / (enorm(j.df) * std::max(enorm(j.w), 1e-300));
        r.metric_defect = std::max(r.metric_defect, md);
        r.orthogonality_defect = std::max(r.orthogonality_defect, od);
        bad[i] = md > tol || od > tol;
      }
      if (r.metric_defect > tol)
        throw HypothesisViolation("<V,V> must equal -<f0',f0'>: " + range_where(t, bad));
      if (r.orthogonality_defect > tol) throw HypothesisViolation("V must be orthogonal to f0': " + range_where(t, bad));
    }
    r.valid = true;
    return r;
  }

  // Euclidean: N0 unit, orthogonal to f0'; classify by <f0',N0'>
  std::vector<double> P(n), X(n);
  std::vector<bool> bad(n);
  for (int i = 0; i < n; ++i) {
    const auto& j = jets[i];
    const double sf = enorm(j.df);
    r.orthogonality_defect = std::max(r.orthogonality_defect, std::abs(edot(j.df, j.w)) / sf);
    r.metric_defect = std::max(r.metric_defect, std::abs(enorm(j.w) - 1));
    // normalized by |f0'|^2 + |N0'|^2 so both witnesses are scale free
    const double s2 = edot(j.df, j.df) + edot(j.dw, j.dw);
    P[i] = edot(j.df, j.dw) / s2;
    X[i] = enorm(ecross(j.df, j.dw)) / s2;
  }
  if (r.orthogonality_defect > tol) throw HypothesisViolation("N0 must be orthogonal to f0'");
  if (r.metric_defect > tol) throw HypothesisViolation("N0 must be a unit field");
  r.char_min = *std::min_element(P.begin(), P.end());
  r.char_max = *std::max_element(P.begin(), P.end());
  r.parallel_min = *std::min_element(X.begin(), X.end());
  r.parallel_max = *std::max_element(X.begin(), X.end());

  const double ctol = std::sqrt(tol) * 1e-2;  // witnesses are first-order quantities
  std::vector<bool> zero(n);
  for (int i = 0; i < n; ++i) zero[i] = std::abs(P[i]) <= ctol;
  const bool all_zero = std::all_of(zero.begin(), zero.end(), [](bool b) { return b; });
  const bool none_zero = std::none_of(zero.begin(), zero.end(), [](bool b) { return b; });
  if (all_zero) {
    r.kind = CaseKind::psph_asymptotic;
    r.valid = true;
    return r;
  }
  if (!none_zero) throw MixedType("<f0', N0'> vanishes on part of the curve only: " + range_where(t, zero));
  for (int i = 0; i < n; ++i) bad[i] = sgn(P[i]) != sgn(P[0]);
  if (std::any_of(bad.begin(), bad.end(), [](bool b) { return b; }))
    throw MixedType("<f0', N0'> changes sign: " + range_where(t, bad));
  r.normal_flipped = P[0] < 0;

  for (int i = 0; i < n; ++i) zero[i] = X[i] <= ctol;
  if (std::all_of(zero.begin(), zero.end(), [](bool b) { return b; })) {
    r.kind = CaseKind::psph_principal;
  } else if (std::none_of(zero.begin(), zero.end(), [](bool b) { return b; })) {
    r.kind = CaseKind::psph_general;
  } else {
    throw HypothesisViolation("f0' and N0' are parallel on part of the curve only: " + range_where(t, zero));
  }
  r.valid = true;
  return r;
}

// ---------------------------------------------------------------- CMC

FrameJet cmc_data_frame(const CurveJet& j, CaseKind kind) {
  C3 e0, e1, d0, d1;
  if (kind == CaseKind::cmc_null) {
    const double pr = ldot(j.df, j.w);
    const double eps2 = sgn(pr);
    const double g = 2 * std::abs(pr);  // e^omega
    const double dg = 2 * eps2 * (ldot(j.ddf, j.w) + ldot(j.df, j.dw));
    const double q = 0.5 * std::sqrt(g), dq = 0.25 * dg / std::sqrt(g);
    const C3 ep = mul(1 / q, j.df), em = mul(eps2 / q, j.w);
    const C3 dep = sub(mul(1 / q, j.ddf), mul(dq / (q * q), j.df));
    const C3 dem = sub(mul(eps2 / q, j.dw), mul(eps2 * dq / (q * q), j.w));
    e0 = mul(0.5, sub(ep, em));
    e1 = mul(0.5, add(ep, em));
    d0 = mul(0.5, sub(dep, dem));
    d1 = mul(0.5, add(dep, dem));
  } else {
    // timelike: f0' along E0 and V along E1; spacelike swaps the roles
    const bool tl = kind == CaseKind::cmc_timelike;
    const C3& a = tl ? j.df : j.w;
    const C3& da = tl ? j.ddf : j.dw;
    const C3& b = tl ? j.w : j.df;
    const C3& db = tl ? j.dw : j.ddf;
    const double g = tl ? ldot(j.w, j.w) : ldot(j.df, j.df);
    const double dg = tl ? 2 * ldot(j.w, j.dw) : 2 * ldot(j.df, j.ddf);
    const double s = 1 / std::sqrt(g), ds = -0.5 * s * dg / g;
    e0 = mul(s, a);
    e1 = mul(s, b);
    d0 = add(mul(s, da), mul(ds, a));
    d1 = add(mul(s, db), mul(ds, b));
  }
  const C3 e2 = lcross(e0, e1);
  const C3 d2 = add(lcross(d0, e1), lcross(e0, d1));
  return {frame_from_columns(e0, e1, e2), frame_from_columns(d0, d1, d2)};
}

Mat2 cmc_frame_log_derivative(const CurveJet& j, CaseKind kind) {
  const FrameJet fj = cmc_data_frame(j, kind);
  return lie_iso(Metric::minkowski, mat3_mul(frame_inverse(Metric::minkowski, fj.frame), fj.derivative));
}

namespace {

Placement cmc_placement(const CurveData& data, CaseKind kind, double t0) {
  const CurveJet j = data.at(t0);
  Placement p;
  p.origin = j.f;
  p.linear = cmc_data_frame(j, kind).frame;
  return p;
}

}  // namespace

PotentialPair potential_cmc_noncharacteristic(const CurveData& data, double H, const CaseReport& report,
                                              double t0) {
  if (H == 0) throw ConfigError("H must be nonzero");
  if (report.kind != CaseKind::cmc_timelike && report.kind != CaseKind::cmc_spacelike)
    throw HypothesisViolation(std::string("non-characteristic CMC potentials need timelike or spacelike data, got ") +
                              to_string(report.kind));
  const CaseKind kind = report.kind;
  const bool tl = kind == CaseKind::cmc_timelike;

  // Hat A with [A]_{21} lambda-coefficient H e^{w/2}/2, matching F0^{-1}F0' at lambda = 1
  auto hat_a = [data, kind, tl, H](double t) {
    const CurveJet j = data.at(t);
    const Mat2 X = cmc_frame_log_derivative(j, kind);
    const double g = tl ? ldot(j.w, j.w) : ldot(j.df, j.df);
    const double h = 0.5 * H * std::sqrt(g);
    const double bm = tl ? h : -h;  // lambda^{-1} coefficient of the (1,2) entry
    Laurent3 a;
    a.z = Mat2{X.a, 0.0, 0.0, X.d};
    a.p = Mat2{0.0, X.b - bm, h, 0.0};
    a.m = Mat2{0.0, bm, X.c - h, 0.0};
    return a;
  };

  PotentialPair pp;
  pp.form = RealForm::split;
  pp.kind = kind;
  pp.H = H;
  pp.chi = hat_a;
  if (tl) {
    pp.psi = [hat_a](double y) {
      Laurent3 a = hat_a(-y);
      a.m = -a.m, a.z = -a.z, a.p = -a.p;
      return a;
    };
    pp.relation = PsiRelation::mirror;
    pp.x0 = t0;
    pp.y0 = -t0;
  } else {
    pp.psi = hat_a;
    pp.relation = PsiRelation::same;
    pp.x0 = t0;
    pp.y0 = t0;
  }
  pp.t0 = t0;
  pp.placement = cmc_placement(data, kind, t0);
  pp.regular = true;  // [chi_1]_21 = [psi_-1]_12 up to sign = H e^{w/2}/2, never zero
  return pp;
}

PotentialPair potential_cmc_null(const CurveData& data, double H, const ComplexFn& alpha, const ComplexFn& beta,
                                 double t0, NullReport* report) {
  if (H == 0) throw ConfigError("H must be nonzero");
  const CurveJet j0 = data.at(t0);
  const double pr = ldot(j0.df, j0.w);
  if (pr == 0) throw HypothesisViolation("<f0', V> vanishes at the base point");
  const double eps2 = sgn(pr);
  const Mat2 X0 = cmc_frame_log_derivative(j0, CaseKind::cmc_null);
  // chi_1 = a e0 + b e1; its (2,1) entry is a + b = H e^{w/2}/2 for a coordinate frame
  const double c1 = X0.c.real();
  const double ew2 = std::sqrt(2 * std::abs(pr));
  const double implied = 2 * c1 / ew2;
  if (implied == 0 || sgn(implied) != sgn(H))
    throw HypothesisViolation(fmt::format("null data carries mean curvature {:.6g}, incompatible with H = {:.6g}",
                                          implied, H));
  // x -> k x scales c1 by k and e^{w/2} by sqrt(k)
  const double k = (H / implied) * (H / implied);
  NullReport nr;
  nr.implied_H = implied;
  nr.param_scale = k;
  nr.eps2 = eps2;
  nr.alpha_required = -eps2 * H * std::sqrt(k) * ew2 / 2;
  if (report) *report = nr;

  const cplx a0 = alpha(0.0);
  if (std::abs(a0.imag()) > 1e-12 * std::max(1.0, std::abs(a0)))
    throw ConfigError("alpha must be real for CMC data");
  if (a0.real() == 0) throw HypothesisViolation("alpha(0) must be nonzero");
  if (std::abs(a0.real() - nr.alpha_required) > 1e-8 * std::abs(nr.alpha_required))
    throw HypothesisViolation(fmt::format("alpha(0) = {:.10g} but the null data and H = {:.6g} require alpha(0) = {:.10g}",
                                          a0.real(), H, nr.alpha_required));

  // <f0', V'> = 0 along the curve, equivalently the e2 part of F0^{-1}F0' is omega'/4
  PotentialPair pp;
  pp.form = RealForm::split;
  pp.kind = CaseKind::cmc_null;
  pp.H = H;
  pp.x0 = t0;
  pp.y0 = 0;
  pp.t0 = t0;
  pp.param_scale = k;
  pp.chi = [data, t0, k](double x) {
    const CurveJet j = data.at(t0 + k * (x - t0));
    const Mat2 X = cmc_frame_log_derivative(j, CaseKind::cmc_null) * k;
    Laurent3 a;
    a.z = Mat2{X.a, 0.0, 0.0, X.d};
    a.p = Mat2{0.0, X.b, X.c, 0.0};
    return a;
  };
  pp.psi = [alpha, beta](double y) {
    const cplx a = alpha(y), b = beta(y);
    Laurent3 l;
    l.m = Mat2{0.0, a.real(), b.real(), 0.0};
    return l;
  };
  pp.relation = PsiRelation::independent;
  pp.placement.origin = j0.f;
  pp.placement.linear = cmc_data_frame(j0, CaseKind::cmc_null).frame;
  pp.regular = true;
  if (k != 1) pp.notes = fmt::format("curve parameter rescaled by {:.10g} to carry H = {:.6g}", k, H);
  return pp;
}

PotentialPair potential_revolution_timelike(double rho, double H) {
  if (!(rho > 0)) throw ConfigError("rho must be positive");
  if (H == 0) throw ConfigError("H must be nonzero");
  Laurent3 a;
  a.p = Mat2{0.0, 0.5 * (1 + rho * H), 0.5 * H * rho, 0.0};
  a.m = Mat2{0.0, -0.5 * H * rho, -0.5 * (1 + rho * H), 0.0};
  PotentialPair pp;
  pp.form = RealForm::split;
  pp.kind = CaseKind::cmc_spacelike;
  pp.H = H;
  pp.chi = [a](double) { return a; };
  pp.psi = pp.chi;
  pp.relation = PsiRelation::same;
  // the circle rho (sin t e1 + cos t e2) with V = rho e0 has the model frame at t = 0
  pp.placement.origin = {0, 0, rho};
  return pp;
}

// ---------------------------------------------------------------- pseudospherical

PsphScalars psph_scalars(const CurveJet& jin, CaseKind kind, bool flip) {
  const CurveJet j = flip ? flipped(jin) : jin;
  const double A2 = edot(j.df, j.df), B2 = edot(j.dw, j.dw);
  const double P = edot(j.df, j.dw);
  PsphScalars s;
  if (kind == CaseKind::psph_principal) {
    s.beta = std::sqrt(A2 + B2);
    s.alpha = 0;
    s.theta = std::atan2(std::sqrt(A2), std::sqrt(B2));
    s.theta_v = edot(j.ddf, ecross(j.df, j.w)) / A2;
    return s;
  }
  if (kind != CaseKind::psph_general) throw std::logic_error("psph_scalars: characteristic data");
  const double Z = (B2 - A2) / (2 * P);
  const double phi = std::atan2(1.0, Z);
  s.theta = phi / 2;
  const double disc = std::sqrt(4 * P * P + (B2 - A2) * (B2 - A2));
  s.beta = std::sqrt(0.5 * (A2 + B2 + disc));
  // |f' x N'| = |alpha| beta; the sign keeps (E1, E2, N) right-handed
  s.alpha = -edot(ecross(j.df, j.dw), j.w) / s.beta;
  const double dP = edot(j.ddf, j.dw) + edot(j.df, j.ddw);
  const double dZ = (edot(j.dw, j.ddw) - edot(j.df, j.ddf)) / P - Z * dP / P;
  const double sn = std::sin(s.theta), cs = std::cos(s.theta);
  const double Y = sn * cs * (edot(j.ddf, j.df) - edot(j.dw, j.ddw)) + cs * cs * edot(j.df, j.ddw) -
                   sn * sn * edot(j.dw, j.ddf);
  s.theta_v = s.alpha * dZ / (2 * s.beta * (Z * Z + 1)) - Y / (s.alpha * s.beta);
  return s;
}

Mat3 psph_data_frame(const CurveJet& jin, CaseKind kind, bool flip) {
  const CurveJet j = flip ? flipped(jin) : jin;
  if (kind == CaseKind::psph_asymptotic) {
    const C3 e1 = mul(1 / enorm(j.df), j.df);
    return frame_from_columns(e1, ecross(j.w, e1), j.w);
  }
  const PsphScalars s = psph_scalars(jin, kind, flip);
  C3 e1, e2;
  if (kind == CaseKind::psph_principal) {
    e2 = mul(-1 / enorm(j.df), j.df);
    e1 = ecross(e2, j.w);
  } else {
    const double sn = std::sin(s.theta), cs = std::cos(s.theta);
    e1 = mul(1 / s.alpha, sub(mul(cs, j.df), mul(sn, j.dw)));
    e2 = mul(-1 / s.beta, add(mul(sn, j.df), mul(cs, j.dw)));
  }
  return frame_from_columns(e1, e2, j.w);
}

Laurent3 psph_noncharacteristic_potential(const PsphScalars& s) {
  const cplx I(0, 1);
  const cplx em = std::exp(-I * s.theta), ep = std::exp(I * s.theta);
  const double bp = 0.5 * (s.beta + s.alpha), bm = 0.5 * (s.beta - s.alpha);
  Laurent3 a;
  a.z = Mat2{-0.5 * I * s.theta_v, 0.0, 0.0, 0.5 * I * s.theta_v};
  a.p = Mat2{0.0, 0.5 * I * bp * em, 0.5 * I * bp * ep, 0.0};
  a.m = Mat2{0.0, 0.5 * I * bm * ep, 0.5 * I * bm * em, 0.0};
  return a;
}

PotentialPair potential_psph_noncharacteristic(const CurveData& data, const CaseReport& report, double t0) {
  const CaseKind kind = report.kind;
  if (kind != CaseKind::psph_principal && kind != CaseKind::psph_general)
    throw HypothesisViolation(std::string("non-characteristic potentials need <f0',N0'> != 0, got ") + to_string(kind));
  const bool flip = report.normal_flipped;
  auto hat_a = [data, kind, flip](double t) { return psph_noncharacteristic_potential(psph_scalars(data.at(t), kind, flip)); };

  PotentialPair pp;
  pp.form = RealForm::unitary;
  pp.kind = kind;
  pp.chi = hat_a;
  pp.psi = [hat_a](double y) {
    Laurent3 a = hat_a(-y);
    a.m = -a.m, a.z = -a.z, a.p = -a.p;
    return a;
  };
  pp.relation = PsiRelation::mirror;
  pp.x0 = t0;
  pp.y0 = -t0;
  pp.t0 = t0;
  const CurveJet j0 = data.at(t0);
  pp.placement.origin = j0.f;
  pp.placement.linear = psph_data_frame(j0, kind, flip);
  pp.placement.normal_sign = flip ? -1 : 1;
  // weak regularity: [chi_1]_12 = i (beta + alpha) e^{-i theta} / 4 with beta > |alpha|
  pp.regular = true;
  if (flip) pp.notes = "N0 flipped so that <f0', N0'> > 0";
  return pp;
}

PotentialPair potential_psph_characteristic(const CurveData& data, const ComplexFn& alpha, double t0, double t_lo,
                                            double t_hi) {
  // the x-asymptotic line of the model has torsion +1; torsion -1 data is
  // solved reflected and reflected back
  const int n = 201;
  const auto ts = sample_points(t_lo, t_hi, n);
  std::vector<double> ratio(n);
  for (int i = 0; i < n; ++i) {
    const CurveJet j = data.at(ts[i]);
    const Mat3 R = psph_data_frame(j, CaseKind::psph_asymptotic, false);
    const C3 e2 = column(R, 1);
    ratio[i] = -edot(e2, j.dw) / enorm(j.df);  // torsion
  }
  const double tol = data.analytic ? 1e-8 : 1e-5;
  const double s0 = sgn(ratio[0]);
  std::vector<bool> bad(n);
  for (int i = 0; i < n; ++i) bad[i] = std::abs(std::abs(ratio[i]) - 1) > tol || sgn(ratio[i]) != s0;
  if (std::any_of(bad.begin(), bad.end(), [](bool b) { return b; }))
    throw HypothesisViolation("asymptotic data on a K = -1 surface needs |N0'| = |f0'| with constant torsion sign: " +
                              range_where(ts, bad));
  const bool reflect = s0 < 0;
  const Mat3 P{{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}};

  auto jet = [data, reflect, P](double t) {
    CurveJet j = data.at(t);
    if (reflect) {
      for (C3* v : {&j.f, &j.df, &j.ddf, &j.w, &j.dw, &j.ddw}) *v = mat3_apply(P, *v);
    }
    return j;
  };
  auto chi = [jet](double t) {
    const CurveJet j = jet(t);
    const C3 e1 = mul(1 / enorm(j.df), j.df);
    const C3 e2 = ecross(j.w, e1);
    // x = <E2', N> = -<E2, N'>, z = <E1', E2>
    const double x = -edot(e2, j.dw);
    const double z = edot(j.ddf, e2) / enorm(j.df);
    const cplx I(0, 1);
    Laurent3 a;
    a.z = Mat2{0.5 * I * z, 0.0, 0.0, -0.5 * I * z};
    a.p = Mat2{0.0, 0.5 * I * x, 0.5 * I * x, 0.0};
    return a;
  };

  PotentialPair pp;
  pp.form = RealForm::unitary;
  pp.kind = CaseKind::psph_asymptotic;
  pp.chi = chi;
  pp.psi = [alpha](double y) {
    const cplx a = alpha(y);
    if (a == 0.0) throw HypothesisViolation(fmt::format("alpha vanishes at y = {:.6g}", y));
    Laurent3 l;
    l.m = Mat2{0.0, a, -std::conj(a), 0.0};
    return l;
  };
  pp.relation = PsiRelation::independent;
  pp.x0 = t0;
  pp.y0 = 0;
  pp.t0 = t0;
  const CurveJet j0 = jet(t0);
  pp.placement.origin = data.at(t0).f;
  pp.placement.linear = psph_data_frame(j0, CaseKind::psph_asymptotic, false);
  if (reflect) {
    pp.placement.linear = mat3_mul(P, pp.placement.linear);
    pp.notes = "torsion -1 data solved in the mirror image";
  }
  if (alpha(0.0) == 0.0) throw HypothesisViolation("alpha(0) must be nonzero");
  pp.regular = true;
  return pp;
}

}  // namespace gcauchy
