#include "gcauchy/surface.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "json.hpp"

namespace gcauchy {

namespace {

using C3 = Coords3;

C3 add(const C3& a, const C3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
C3 sub(const C3& a, const C3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
C3 mul(double s, const C3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double edot(const C3& a, const C3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double enorm(const C3& a) { return std::sqrt(edot(a, a)); }

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// running max / mean
struct Stats {
  double max = 0, sum = 0;
  int count = 0;
  void add(double e) {
    max = std::max(max, e);
    sum += e;
    ++count;
  }
  void into(CheckReport& r) const {
    r.max = max;
    r.mean = count ? sum / count : 0;
    r.count = count;
  }
};

class Stencil {
 public:
  explicit Stencil(const SurfaceSamples& m) : m_(m), g_(m.grid) {}

  bool inside(int i, int j) const { return i >= 0 && j >= 0 && i < g_.nx && j < g_.ny; }
  // a point was evaluated there
  bool has(int i, int j) const {
    if (!inside(i, j)) return false;
    const NodeState s = m_.state[g_.index(i, j)];
    return s == NodeState::ok || s == NodeState::singular;
  }
  bool box(int i, int j) const {
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di)
        if (!has(i + di, j + dj)) return false;
    return true;
  }
  const C3& p(int i, int j) const { return m_.at(i, j); }

  C3 fx(int i, int j) const { return mul(0.5 / g_.hx(), sub(p(i + 1, j), p(i - 1, j))); }
  C3 fy(int i, int j) const { return mul(0.5 / g_.hy(), sub(p(i, j + 1), p(i, j - 1))); }
  C3 fxx(int i, int j) const {
    return mul(1 / (g_.hx() * g_.hx()), add(sub(p(i + 1, j), mul(2, p(i, j))), p(i - 1, j)));
  }
  C3 fyy(int i, int j) const {
    return mul(1 / (g_.hy() * g_.hy()), add(sub(p(i, j + 1), mul(2, p(i, j))), p(i, j - 1)));
  }
  C3 fxy(int i, int j) const {
    const C3 s = add(sub(sub(p(i + 1, j + 1), p(i + 1, j - 1)), p(i - 1, j + 1)), p(i - 1, j - 1));
    return mul(0.25 / (g_.hx() * g_.hy()), s);
  }

  // 4th-order first derivative along (di, dj), per unit of the step length h
  bool d4(int i, int j, int di, int dj, double h, C3& out) const {
    for (int k = -2; k <= 2; ++k)
      if (!has(i + k * di, j + k * dj)) return false;
    C3 s = sub(mul(8, p(i + di, j + dj)), mul(8, p(i - di, j - dj)));
    s = add(sub(s, p(i + 2 * di, j + 2 * dj)), p(i - 2 * di, j - 2 * dj));
    out = mul(1 / (12 * h), s);
    return true;
  }

 private:
  const SurfaceSamples& m_;
  const GridSpec& g_;
};

bool is_cmc(CaseKind k) {
  return k == CaseKind::cmc_timelike || k == CaseKind::cmc_spacelike || k == CaseKind::cmc_null;
}

// grid index whose coordinate is v, or -1
int node_at(double lo, double h, int n, double v) {
  if (n == 1) return std::abs(v - lo) < 1e-12 ? 0 : -1;
  const double s = (v - lo) / h;
  const long k = std::lround(s);
  if (k < 0 || k >= n || std::abs(s - k) > 1e-9) return -1;
  return static_cast<int>(k);
}

Mat2 conj_by(const Mat2& F, const Mat2& X) { return F * X * F.inverse(); }

double wrap_pi(double a) {
  constexpr double tau = 2 * std::numbers::pi;
  a = std::remainder(a, tau);
  return a;
}

C3 unit(Metric g, const C3& v) {
  const double s = std::sqrt(std::abs(ip(g, v, v)));
  return s > 0 ? mul(1 / s, v) : v;
}

}  // namespace

void CheckReport::finish() { pass = count > 0 && std::isfinite(max) && max <= tolerance; }

bool DiagnosticsReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckReport* DiagnosticsReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

CheckReport* DiagnosticsReport::find(std::string_view name) {
  for (auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string DiagnosticsReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json root;
  root["all_pass"] = all_pass();
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json o;
    o["name"] = c.name;
    o["max"] = c.max;
    o["mean"] = c.mean;
    o["count"] = c.count;
    o["excluded"] = c.excluded;
    o["tolerance"] = c.tolerance;
    o["rate"] = c.rate ? ordered_json(*c.rate) : ordered_json(nullptr);
    o["pass"] = c.pass;
    o["note"] = c.note;
    arr.push_back(std::move(o));
  }
  root["checks"] = std::move(arr);
  return root.dump(2) + "\n";
}

double convergence_rate(double coarse, double fine) { return std::log2(coarse / fine); }

FieldEstimate mean_curvature(const SurfaceSamples& mesh, double target, double tol) {
  const GridSpec& g = mesh.grid;
  const Stencil st(mesh);
  FieldEstimate out;
  out.value.assign(g.size(), nan);
  CheckReport& r = out.report;
  r.name = "mean_curvature";
  r.tolerance = tol;
  Stats s;
  const bool gauged = !mesh.scalars.empty();
  for (int j = 1; j + 1 < g.ny; ++j)
    for (int i = 1; i + 1 < g.nx; ++i) {
      const int k = g.index(i, j);
      if (!mesh.ok(i, j) || !st.box(i, j)) {
        ++r.excluded;
        continue;
      }
      const double conformal = gauged ? mesh.scalars[k].conformal : 2 * ip(mesh.metric, st.fx(i, j), st.fy(i, j));
      if (conformal == 0) {
        ++r.excluded;
        continue;
      }
      const double h = 2 * ip(mesh.metric, st.fxy(i, j), mesh.normal[k]) / conformal;
      out.value[k] = h;
      s.add(std::abs(h - target));
    }
  s.into(r);
  r.note = fmt::format("target H = {}; eps e^omega from {}", target, gauged ? "gauge" : "mesh derivatives");
  r.finish();
  return out;
}

FieldEstimate gauss_curvature(const SurfaceSamples& mesh, double target, double tol, double singular_tol) {
  const GridSpec& g = mesh.grid;
  const Stencil st(mesh);
  FieldEstimate out;
  out.value.assign(g.size(), nan);
  CheckReport& r = out.report;
  r.name = "gauss_curvature";
  r.tolerance = tol;
  Stats s;
  int singular = 0;
  const bool gauged = !mesh.scalars.empty();
  for (int j = 1; j + 1 < g.ny; ++j)
    for (int i = 1; i + 1 < g.nx; ++i) {
      const int k = g.index(i, j);
      if (!st.box(i, j) || mesh.state[k] != NodeState::ok) {
        ++r.excluded;
        continue;
      }
      const C3 fx = st.fx(i, j), fy = st.fy(i, j);
      const double E = edot(fx, fx), F = edot(fx, fy), G = edot(fy, fy);
      const double sin_phi = gauged ? std::abs(std::sin(2 * mesh.scalars[k].theta))
                                    : std::sqrt(std::max(0.0, E * G - F * F) / (E * G));
      if (sin_phi < singular_tol) {
        ++singular;
        ++r.excluded;
        continue;
      }
      const C3& n = mesh.normal[k];
      const double L = edot(st.fxx(i, j), n), M = edot(st.fxy(i, j), n), N = edot(st.fyy(i, j), n);
      const double K = (L * N - M * M) / (E * G - F * F);
      out.value[k] = K;
      s.add(std::abs(K - target));
    }
  s.into(r);
  r.note = fmt::format("target K = {}; {} near-singular nodes excluded", target, singular);
  r.finish();
  return out;
}

CheckReport cauchy_residual(const SurfaceSamples& mesh, const CurveData& data, const PotentialPair& pair, double tol,
                            const IntegrateOptions& opt) {
  const GridSpec& g = mesh.grid;
  const Stencil st(mesh);
  CheckReport r;
  r.name = "cauchy_residual";
  r.tolerance = tol;
  const bool cmc = is_cmc(pair.kind);
  const double hx = g.hx(), hy = g.hy();
  const bool square = std::abs(hx - hy) <= 1e-12 * std::max(hx, hy);
  auto tpar = [&](double x) { return pair.t0 + pair.param_scale * (x - pair.x0); };
  Stats pos, der, nor;

  auto on_curve = [&](int i, int j, double t) {
    const CurveJet c = data.at(t);
    pos.add(enorm(sub(st.p(i, j), c.f)));
    if (!cmc) nor.add(enorm(sub(mesh.normal[g.index(i, j)], c.w)));
  };

  if (pair.relation != PsiRelation::independent) {
    // the curve is the diagonal y = -x (mirror) or y = x (same)
    const double sg = pair.relation == PsiRelation::mirror ? -1 : 1;
    for (int i = 0; i < g.nx; ++i) {
      const int j = node_at(g.y_lo, hy, g.ny, sg * g.x(i));
      if (j < 0) continue;
      if (!st.has(i, j)) {
        ++r.excluded;
        continue;
      }
      const double t = tpar(g.x(i));
      on_curve(i, j, t);
      if (cmc && square) {
        // across the curve: d/dv along (1,1) for mirrored data, d/du along (1,-1) otherwise
        C3 d;
        if (st.d4(i, j, 1, sg < 0 ? 1 : -1, hx, d))
          der.add(enorm(sub(d, data.at(t).w)));
        else
          ++r.excluded;
      }
    }
    if (cmc && !square) r.note = "transverse derivative skipped: hx != hy; ";
  } else {
    const int j0 = node_at(g.y_lo, hy, g.ny, pair.y0);
    const int i0 = node_at(g.x_lo, hx, g.nx, pair.x0);
    if (j0 >= 0) {
      for (int i = 0; i < g.nx; ++i) {
        if (!st.has(i, j0)) {
          ++r.excluded;
          continue;
        }
        const double t = tpar(g.x(i));
        on_curve(i, j0, t);
        C3 d;
        if (cmc) {
          if (st.d4(i, j0, 0, 1, hy, d))
            der.add(enorm(sub(d, data.at(t).w)));
          else
            ++r.excluded;
        }
      }
    }
    if (i0 >= 0 && g.ny > 1) {
      // f_y along x = x0 from the second potential alone
      std::vector<double> ys(g.ny);
      for (int j = 0; j < g.ny; ++j) ys[j] = g.y(j);
      const auto fm = integrate_at_lambda(pair.psi, 1.0, ys, pair.y0, opt);
      for (int j = 0; j < g.ny; ++j) {
        C3 d;
        if (!st.d4(i0, j, 0, 1, hy, d)) {
          ++r.excluded;
          continue;
        }
        const Mat2 m = pair.psi(ys[j]).m;
        Mat2 X;
        if (cmc)
          X = conj_by(fm[j].F, (basis::e0 - basis::e1) * (m.b / pair.H));
        else
          X = -conj_by(fm[j].F, m);
        const C3 want = pair.placement.vector(from_matrix(mesh.metric, X));
        der.add(enorm(sub(d, want)));
      }
    }
    if (i0 < 0 || j0 < 0) r.note = "base point lines are not both grid lines; ";
  }

  r.max = std::max({pos.max, der.max, nor.max});
  r.count = pos.count;
  r.mean = pos.count ? pos.sum / pos.count : 0;
  r.note += fmt::format("position {:.3e} over {} nodes", pos.max, pos.count);
  if (der.count) r.note += fmt::format(", derivative {:.3e} over {}", der.max, der.count);
  if (nor.count) r.note += fmt::format(", normal {:.3e} over {}", nor.max, nor.count);
  r.finish();
  return r;
}

CheckReport geodesic_residual(const SurfaceSamples& mesh, const CurveData& data, const PotentialPair& pair,
                              double tol) {
  const GridSpec& g = mesh.grid;
  const Stencil st(mesh);
  CheckReport r;
  r.name = "geodesic_residual";
  r.tolerance = tol;
  Stats s;
  if (pair.relation == PsiRelation::independent) {
    r.note = "the initial curve is not a diagonal of the grid";
    r.finish();
    return r;
  }
  const double sg = pair.relation == PsiRelation::mirror ? -1 : 1;
  for (int i = 0; i < g.nx; ++i) {
    const int j = node_at(g.y_lo, g.hy(), g.ny, sg * g.x(i));
    if (j < 0) continue;
    C3 fx, fy;
    const bool fourth = st.d4(i, j, 1, 0, g.hx(), fx) && st.d4(i, j, 0, 1, g.hy(), fy);
    if (!fourth) {
      if (!st.box(i, j)) {
        ++r.excluded;
        continue;
      }
      fx = st.fx(i, j);
      fy = st.fy(i, j);
    }
    const C3 n = unit(mesh.metric, cross(mesh.metric, fx, fy));
    const CurveJet c = data.at(pair.t0 + pair.param_scale * (g.x(i) - pair.x0));
    const C3 T = unit(mesh.metric, c.df);
    const double eT = ip(mesh.metric, T, T), eN = ip(mesh.metric, n, n);
    C3 kg = sub(c.ddf, mul(ip(mesh.metric, c.ddf, T) / eT, T));
    kg = sub(kg, mul(ip(mesh.metric, c.ddf, n) / eN, n));
    s.add(enorm(kg) / enorm(c.ddf));
  }
  s.into(r);
  r.note = "fraction of f0'' tangent to the mesh and normal to f0'";
  r.finish();
  return r;
}

SineGordonReport sine_gordon_residual(const SurfaceSamples& mesh, double tol, double codazzi_tol) {
  const GridSpec& g = mesh.grid;
  SineGordonReport out;
  CheckReport& r = out.residual;
  CheckReport& c = out.codazzi;
  r.name = "sine_gordon_residual";
  c.name = "codazzi";
  r.tolerance = tol;
  c.tolerance = codazzi_tol;
  if (mesh.scalars.empty()) {
    r.note = c.note = "no gauge scalars";
    r.finish();
    c.finish();
    return out;
  }
  auto has = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= g.nx || j >= g.ny) return false;
    const NodeState s = mesh.state[g.index(i, j)];
    return s == NodeState::ok || s == NodeState::singular;
  };
  auto S = [&](int i, int j) -> const NodeScalars& { return mesh.scalars[g.index(i, j)]; };
  const double hx = g.hx(), hy = g.hy();
  Stats rs, cs;
  int flagged = 0;
  for (int j = 1; j + 1 < g.ny; ++j)
    for (int i = 1; i + 1 < g.nx; ++i) {
      if (!(has(i, j) && has(i + 1, j + 1) && has(i + 1, j - 1) && has(i - 1, j + 1) && has(i - 1, j - 1))) {
        ++r.excluded;
        continue;
      }
      const double d1 = wrap_pi(2 * (S(i + 1, j + 1).theta - S(i + 1, j - 1).theta));
      const double d2 = wrap_pi(2 * (S(i - 1, j + 1).theta - S(i - 1, j - 1).theta));
      const double phi_xy = (d1 - d2) / (4 * hx * hy);
      const NodeScalars& n = S(i, j);
      rs.add(std::abs(phi_xy - n.fx * n.fy * std::sin(2 * n.theta)));
      if (mesh.state[g.index(i, j)] == NodeState::singular) ++flagged;
    }
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (j > 0 && j + 1 < g.ny && has(i, j - 1) && has(i, j + 1))
        cs.add(std::abs(S(i, j + 1).fx - S(i, j - 1).fx) / (2 * hy));
      if (i > 0 && i + 1 < g.nx && has(i - 1, j) && has(i + 1, j))
        cs.add(std::abs(S(i + 1, j).fy - S(i - 1, j).fy) / (2 * hx));
    }
  rs.into(r);
  cs.into(c);
  r.note = fmt::format("phi = 2 theta; {} stencils centred on non-regular nodes", flagged);
  c.note = "max of |d_y |f_x|| and |d_x |f_y||";
  r.finish();
  c.finish();
  return out;
}

CheckReport normal_unit(const SurfaceSamples& mesh, double tol) {
  CheckReport r;
  r.name = "normal_unit";
  r.tolerance = tol;
  Stats s;
  for (int k = 0; k < mesh.grid.size(); ++k) {
    if (mesh.state[k] != NodeState::ok) {
      ++r.excluded;
      continue;
    }
    const C3& n = mesh.normal[k];
    s.add(std::abs(ip(mesh.metric, n, n) - 1));
  }
  s.into(r);
  r.finish();
  return r;
}

CheckReport normal_consistency(const SurfaceSamples& mesh, double tol) {
  const GridSpec& g = mesh.grid;
  const Stencil st(mesh);
  CheckReport r;
  r.name = "normal_consistency";
  r.tolerance = tol;
  Stats s;
  int pos = 0, neg = 0;
  const bool gauged = !mesh.scalars.empty() && mesh.metric == Metric::euclidean;
  for (int j = 1; j + 1 < g.ny; ++j)
    for (int i = 1; i + 1 < g.nx; ++i) {
      const int k = g.index(i, j);
      if (!mesh.ok(i, j) || !st.box(i, j)) {
        ++r.excluded;
        continue;
      }
      const C3 fx = st.fx(i, j), fy = st.fy(i, j);
      const C3 c = cross(mesh.metric, fx, fy);
      // degenerate stencil: tangent vectors nearly parallel
      if (std::abs(ip(mesh.metric, c, c)) < 1e-4 * edot(fx, fx) * edot(fy, fy)) {
        ++r.excluded;
        continue;
      }
      C3 n = unit(mesh.metric, c);
      // f_x x f_y changes side with sin(phi) on pseudospherical meshes
      if (gauged && std::sin(2 * mesh.scalars[k].theta) < 0) n = mul(-1, n);
      const double ep = enorm(sub(mesh.normal[k], n)), em = enorm(add(mesh.normal[k], n));
      (ep <= em ? pos : neg)++;
      s.add(std::min(ep, em));
    }
  s.into(r);
  r.note = fmt::format("orientation relative to f_x x f_y: {} same, {} opposite", pos, neg);
  r.finish();
  if (pos && neg) r.pass = false;
  return r;
}

}  // namespace gcauchy
