// Built-in curves. Positions and fields are written once over Taylor
// series, so every derivative the potentials need comes out exactly.

#include <cmath>
#include <stdexcept>

#include "gcauchy/curve.hpp"
#include "gcauchy/errors.hpp"
#include "gcauchy/taylor.hpp"

namespace gcauchy {

namespace {

using T5 = Taylor<5>;
using TV = std::array<T5, 3>;
using Params = std::map<std::string, double>;

TV operator-(const TV& a, const TV& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
TV scale(const T5& s, const TV& a) { return {s * a[0], s * a[1], s * a[2]}; }
T5 dot(const TV& a, const TV& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
TV shifted(const TV& a) { return {a[0].shifted(), a[1].shifted(), a[2].shifted()}; }
TV ecross(const TV& u, const TV& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

// Euclidean principal normal from the position series; exact to order 3
TV principal_normal(const TV& p) {
  const TV d1 = shifted(p), d2 = shifted(d1);
  const TV n = d2 - scale(dot(d2, d1) / dot(d1, d1), d1);
  const T5 len2 = dot(n, n);
  if (len2.value() < 1e-24) throw HypothesisViolation("principal normal undefined: curvature vanishes");
  return scale(1.0 / sqrt(len2), n);
}

TV binormal(const TV& p) {
  const TV d1 = shifted(p);
  const TV t = scale(1.0 / sqrt(dot(d1, d1)), d1);
  return ecross(t, principal_normal(p));
}

struct Entry {
  CatalogCurve info;
  std::function<TV(const T5&, const Params&)> position;
  // field from (t, position); empty means principal normal
  std::function<TV(const T5&, const TV&, const Params&)> field;
  std::string field_label;
};

double par(const Params& p, const char* k) { return p.at(k); }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = [] {
    std::vector<Entry> v;
    const auto E = Metric::euclidean;
    const auto L = Metric::minkowski;

    v.push_back({{"line", E, {{"w", 1.0}}, "(t,0,0) with N0 = (0, cos wt, sin wt)"},
                 [](const T5& t, const Params&) { return TV{t, 0.0, 0.0}; },
                 [](const T5& t, const TV&, const Params& p) {
                   const T5 a = par(p, "w") * t;
                   return TV{0.0, cos(a), sin(a)};
                 },
                 "N0 (rotating normal)"});
    v.push_back({{"circle", E, {{"r", 1.0}}, "(r cos t, r sin t, 0)"},
                 [](const T5& t, const Params& p) {
                   const double r = par(p, "r");
                   return TV{r * cos(t), r * sin(t), 0.0};
                 },
                 nullptr, "N0 (principal normal)"});
    v.push_back({{"ellipse", E, {{"a", 1.0}, {"b", 2.0}}, "(a sin t, b cos t, 0)"},
                 [](const T5& t, const Params& p) {
                   return TV{par(p, "a") * sin(t), par(p, "b") * cos(t), 0.0};
                 },
                 nullptr, "N0 (principal normal)"});
    v.push_back({{"parabola", E, {}, "(t, t^2, 0)"},
                 [](const T5& t, const Params&) { return TV{t, t * t, 0.0}; }, nullptr,
                 "N0 (principal normal)"});
    v.push_back({{"catenary", E, {}, "(t, cosh t, 0)"},
                 [](const T5& t, const Params&) { return TV{t, cosh(t), 0.0}; }, nullptr,
                 "N0 (principal normal)"});
    v.push_back({{"cubic", E, {}, "(t^2 - 1, t (t^2 - 1), 0)"},
                 [](const T5& t, const Params&) {
                   const T5 u = t * t - 1.0;
                   return TV{u, t * u, 0.0};
                 },
                 nullptr, "N0 (principal normal)"});
    v.push_back({{"lemniscate", E, {}, "(cos t, sin 2t / 2, 0) / (1 + sin^2 t)"},
                 [](const T5& t, const Params&) {
                   const T5 s = sin(t), d = 1.0 + s * s;
                   return TV{cos(t) / d, s * cos(t) / d, 0.0};
                 },
                 nullptr, "N0 (principal normal)"});
    v.push_back({{"helix", E, {{"a", 1.0}, {"b", 0.5}}, "(a cos t, a sin t, b t)"},
                 [](const T5& t, const Params& p) {
                   const double a = par(p, "a");
                   return TV{a * cos(t), a * sin(t), par(p, "b") * t};
                 },
                 nullptr, "N0 (principal normal)"});
    v.push_back({{"asymptotic-helix", E, {{"a", 0.5}, {"b", 0.5}},
                  "(a cos t, a sin t, b t) with N0 = binormal; torsion b/(a^2+b^2) must be 1"},
                 [](const T5& t, const Params& p) {
                   const double a = par(p, "a");
                   return TV{a * cos(t), a * sin(t), par(p, "b") * t};
                 },
                 [](const T5&, const TV& pos, const Params&) { return binormal(pos); },
                 "N0 (binormal)"});

    // Minkowski curves, coordinates in (e0, e1, e2)
    v.push_back({{"circle", L, {{"r", 1.0}}, "r (sin t e1 + cos t e2) with V = r e0"},
                 [](const T5& t, const Params& p) {
                   const double r = par(p, "r");
                   return TV{0.0, r * sin(t), r * cos(t)};
                 },
                 [](const T5&, const TV&, const Params& p) { return TV{par(p, "r"), 0.0, 0.0}; },
                 "V"});
    v.push_back({{"timelike-line", L, {}, "t e0 with V = e1"},
                 [](const T5& t, const Params&) { return TV{t, 0.0, 0.0}; },
                 [](const T5&, const TV&, const Params&) { return TV{0.0, 1.0, 0.0}; }, "V"});
    v.push_back({{"spacelike-line", L, {}, "t e1 with V = e0"},
                 [](const T5& t, const Params&) { return TV{0.0, t, 0.0}; },
                 [](const T5&, const TV&, const Params&) { return TV{1.0, 0.0, 0.0}; }, "V"});
    v.push_back({{"hyperbola", L, {{"r", 1.0}}, "r (sinh t e0 + cosh t e1) with V = r e2"},
                 [](const T5& t, const Params& p) {
                   const double r = par(p, "r");
                   return TV{r * sinh(t), r * cosh(t), 0.0};
                 },
                 [](const T5&, const TV&, const Params& p) { return TV{0.0, 0.0, par(p, "r")}; },
                 "V"});
    v.push_back({{"timelike-helix", L, {{"a", 2.0}, {"r", 1.0}},
                  "a t e0 + r (cos t e1 + sin t e2) with radial V, a > r"},
                 [](const T5& t, const Params& p) {
                   const double r = par(p, "r");
                   return TV{par(p, "a") * t, r * cos(t), r * sin(t)};
                 },
                 [](const T5& t, const TV&, const Params& p) {
                   const double a = par(p, "a"), r = par(p, "r");
                   const double k = std::sqrt(a * a - r * r);
                   return TV{0.0, k * cos(t), k * sin(t)};
                 },
                 "V"});
    // null straight line with the field of the null-axis revolution;
    // h is the mean curvature the data is built for, a the value alpha(0)
    v.push_back({{"null-line", L, {{"h", 0.5}, {"a", 1.0}},
                  "null line (e0 + e1) direction; V from the null-axis revolution"},
                 [](const T5& t, const Params& p) {
                   const double h = par(p, "h"), a = par(p, "a");
                   const double k = std::abs(a) / std::abs(h);
                   return TV{k * t, k * t, T5(-0.5 / h)};
                 },
                 [](const T5& t, const TV&, const Params& p) {
                   const double h = par(p, "h"), a = par(p, "a");
                   const double k = std::abs(a) / std::abs(h);
                   const double s = std::copysign(std::abs(a), h);
                   const double eps2 = -std::copysign(1.0, a) * std::copysign(1.0, h);
                   const T5 tau = s * t;
                   const T5 tt = tau * tau;
                   return TV{eps2 * k * (-1.0 - tt), eps2 * k * (1.0 - tt), eps2 * k * (2.0 * tau)};
                 },
                 "V"});
    return v;
  }();
  return list;
}

}  // namespace

const std::vector<CatalogCurve>& curve_catalog() {
  static const std::vector<CatalogCurve> list = [] {
    std::vector<CatalogCurve> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return list;
}

CurveData catalog_curve(const CurveSpec& spec, const IngestOptions& opt) {
  const Entry* found = nullptr;
  for (const auto& e : entries())
    if (e.info.name == spec.name && e.info.metric == opt.metric) found = &e;
  if (!found) throw ConfigError("unknown catalog curve '" + spec.name + "' for this problem");

  Params p = found->info.defaults;
  for (const auto& [k, val] : spec.params) {
    if (!p.count(k)) throw ConfigError("curve '" + spec.name + "' has no parameter '" + k + "'");
    p[k] = val;
  }
  if (opt.principal_normal && opt.metric != Metric::euclidean)
    throw ConfigError("principal-normal fill is only defined for Euclidean curves");
  const bool pn = opt.principal_normal || !found->field;
  auto position = found->position;
  auto field = found->field;

  CurveData d;
  d.name = spec.str();
  d.metric = opt.metric;
  d.analytic = true;
  d.t_min = -1e300;
  d.t_max = 1e300;
  d.field_label = pn ? "N0 (principal normal)" : found->field_label;
  d.jet = [position, field, p, pn](double t) {
    const T5 x = T5::variable(t);
    const TV pos = position(x, p);
    const TV w = pn ? principal_normal(pos) : field(x, pos, p);
    CurveJet j;
    for (int i = 0; i < 3; ++i) {
      j.f[i] = pos[i].c[0];
      j.df[i] = pos[i].c[1];
      j.ddf[i] = 2 * pos[i].c[2];
      j.w[i] = w[i].c[0];
      j.dw[i] = w[i].c[1];
      j.ddw[i] = 2 * w[i].c[2];
    }
    return j;
  };
  return d;
}

}  // namespace gcauchy
