#include "gcauchy/framegen.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gcauchy/errors.hpp"

#ifdef _OPENMP
#define GC_PARALLEL_FOR _Pragma("omp parallel for schedule(dynamic, 16)")
#else
#define GC_PARALLEL_FOR
#endif

namespace gcauchy {

GridSpec GridSpec::centred(double x0, double y0, double L, int n) {
  return {x0 - L, x0 + L, y0 - L, y0 + L, n, n};
}

const char* to_string(NodeState s) {
  switch (s) {
    case NodeState::ok: return "ok";
    case NodeState::big_cell: return "big-cell";
    case NodeState::irregular: return "irregular";
    case NodeState::singular: return "singular";
  }
  return "?";
}

namespace {

// Knots: the requested times plus t0, sorted and unique. Walks outward from
// t0 in both directions, calling step(t, h) and visit(knot index).
struct StepPlan {
  std::vector<double> knots;
  int start = 0;
  double hmax = 0;
};

int knot_of(const std::vector<double>& knots, double t) {
  int k = static_cast<int>(std::lower_bound(knots.begin(), knots.end(), t) - knots.begin());
  if (k == static_cast<int>(knots.size()) || (k > 0 && std::abs(knots[k - 1] - t) < std::abs(knots[k] - t))) --k;
  return k;
}

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

StepPlan plan_steps(const std::vector<double>& times, double t0, const IntegrateOptions& opt) {
  StepPlan p;
  p.knots = times;
  p.knots.push_back(t0);
  std::sort(p.knots.begin(), p.knots.end());
  // times a few ulps apart (x and -y of a symmetric grid) share one knot
  p.knots.erase(std::unique(p.knots.begin(), p.knots.end(), same_time), p.knots.end());
  p.start = knot_of(p.knots, t0);
  const double L = p.knots.back() - p.knots.front();
  const int n = std::max<int>(1, times.size());
  p.hmax = std::min(1.0 / opt.steps_per_unit, L / std::max(opt.min_steps, 4 * n));
  return p;
}

template <class Step, class Visit>
void walk(const StepPlan& p, Step&& step, Visit&& visit, auto&& save, auto&& restore) {
  const int K = static_cast<int>(p.knots.size());
  visit(p.start);
  save();
  for (int dir : {1, -1}) {
    restore();
    for (int k = p.start; k + dir >= 0 && k + dir < K; k += dir) {
      const double a = p.knots[k], b = p.knots[k + dir];
      const int n = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / p.hmax - 1e-9)));
      const double h = (b - a) / n;
      if (!(std::abs(h) > 1e-14 * std::max(1.0, std::abs(a))))
        if (a != b) throw NumericalFailure("integrate_potential: step underflow");
      for (int s = 0; s < n; ++s) step(s + 1 == n ? b - h : a + s * h, h);
      visit(k + dir);
    }
  }
}

void renormalize(Mat2Batch& F, double limit) {
  std::vector<cplx> det;
  kernels::active().det(F, det);
  for (std::size_t k = 0; k < F.size(); ++k) {
    if (std::abs(det[k] - 1.0) > limit)
      throw NumericalFailure(fmt::format("integrate_potential: det drift {:.3g} in one step", std::abs(det[k] - 1.0)));
    const cplx r = 1.0 / std::sqrt(det[k]);
    F.a[k] *= r;
    F.b[k] *= r;
    F.c[k] *= r;
    F.d[k] *= r;
  }
}

}  // namespace

std::vector<TwistedLoop> integrate_potential(const LoopPotential& A, RealForm form, const std::vector<double>& times,
                                             double t0, int M, const IntegrateOptions& opt) {
  const StepPlan plan = plan_steps(times, t0, opt);
  const auto& ker = kernels::active();
  const auto& lam = circle_nodes(M);
  std::vector<Mat2Batch> at_knot(plan.knots.size());

  Mat2Batch F = Mat2Batch::filled(M, Mat2::identity()), F0 = F;
  Mat2Batch A1(M), A2(M), A3(M), k1(M), k2(M), k3(M), k4(M), tmp(M);
  auto eval = [&](double t, Mat2Batch& out) {
    const Laurent3 a = A(t);
    ker.eval3(a.m, a.z, a.p, lam, out);
  };
  auto step = [&](double t, double h) {
    eval(t, A1);
    eval(t + h / 2, A2);
    eval(t + h, A3);
    ker.mul(F, A1, k1);
    ker.lincomb(F, h / 2, k1, tmp);
    ker.mul(tmp, A2, k2);
    ker.lincomb(F, h / 2, k2, tmp);
    ker.mul(tmp, A2, k3);
    ker.lincomb(F, h, k3, tmp);
    ker.mul(tmp, A3, k4);
    ker.axpy(h / 6, k1, F);
    ker.axpy(h / 3, k2, F);
    ker.axpy(h / 3, k3, F);
    ker.axpy(h / 6, k4, F);
    renormalize(F, opt.det_drift_limit);
  };
  walk(
      plan, step, [&](int k) { at_knot[k] = F; }, [&] { F0 = F; }, [&] { F = F0; });

  std::vector<TwistedLoop> out;
  out.reserve(times.size());
  for (double t : times) out.emplace_back(at_knot[knot_of(plan.knots, t)], form);
  return out;
}

std::vector<PointFrame> integrate_at_lambda(const LoopPotential& A, cplx lambda0, const std::vector<double>& times,
                                            double t0, const IntegrateOptions& opt) {
  const StepPlan plan = plan_steps(times, t0, opt);
  std::vector<PointFrame> at_knot(plan.knots.size());
  PointFrame S{Mat2::identity(), Mat2::zero()}, S0 = S;
  // F' = F A,  G' = G A + F A_lambda  with G = lambda dF/dlambda
  auto rhs = [&](const PointFrame& s, double t) {
    const Laurent3 a = A(t);
    const Mat2 Av = a.at(lambda0), Al = a.lambda_derivative(lambda0);
    return PointFrame{s.F * Av, s.dF * Av + s.F * Al};
  };
  auto add = [](const PointFrame& s, double h, const PointFrame& k) { return PointFrame{s.F + k.F * h, s.dF + k.dF * h}; };
  auto step = [&](double t, double h) {
    const PointFrame q1 = rhs(S, t);
    const PointFrame q2 = rhs(add(S, h / 2, q1), t + h / 2);
    const PointFrame q3 = rhs(add(S, h / 2, q2), t + h / 2);
    const PointFrame q4 = rhs(add(S, h, q3), t + h);
    S.F = S.F + (q1.F + 2.0 * q2.F + 2.0 * q3.F + q4.F) * (h / 6);
    S.dF = S.dF + (q1.dF + 2.0 * q2.dF + 2.0 * q3.dF + q4.dF) * (h / 6);
    // rescaling F by c changes G by c as well; tr(F^{-1} G) = 0 is kept
    const cplx r = 1.0 / std::sqrt(S.F.det());
    S.F = S.F * r;
    S.dF = S.dF * r;
  };
  walk(
      plan, step, [&](int k) { at_knot[k] = S; }, [&] { S0 = S; }, [&] { S = S0; });
  std::vector<PointFrame> out;
  for (double t : times) out.push_back(at_knot[knot_of(plan.knots, t)]);
  return out;
}

int FrameField::masked_count() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const NodeFrame& n) { return n.state != NodeState::ok; }));
}

double FrameField::max_residual() const {
  double r = 0;
  for (const auto& n : nodes)
    if (n.state != NodeState::big_cell) r = std::max(r, n.residual);
  return r;
}

Mat2 FrameField::hminus_at(int i, int j, cplx lambda) const {
  const auto& c = nodes[grid.index(i, j)].hminus;
  Mat2 acc = Mat2::zero();
  const cplx inv = 1.0 / lambda;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * inv + c[k];  // Horner in 1/lambda
  return acc;
}

Mat2 FrameField::hminus_lambda_derivative(int i, int j, cplx lambda) const {
  const auto& c = nodes[grid.index(i, j)].hminus;
  Mat2 acc = Mat2::zero();
  const cplx inv = 1.0 / lambda;
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) acc = acc * inv + c[k] * static_cast<double>(-k);
  return acc * inv;
}

PointFrame FrameField::frame_at(int i, int j) const {
  const PointFrame& p = fplus_l0[i];
  const Mat2 h = hminus_at(i, j, lambda0), dh = hminus_lambda_derivative(i, j, lambda0);
  return {p.F * h, p.dF * h + p.F * dh};
}

TwistedLoop FrameField::frame_loop(int i, int j) const {
  LaurentSeries c(samples);
  const auto& h = nodes[grid.index(i, j)].hminus;
  for (int k = 0; k < static_cast<int>(h.size()); ++k) c[-k] = h[k];
  return loop_mul(fplus[i], TwistedLoop::from_coefficients(c, form));
}

FrameField build_frame_field(const PotentialPair& pair, const GridSpec& grid, const FrameGenOptions& opt) {
  if (grid.nx < 1 || grid.ny < 1) throw ConfigError("grid needs at least one node per axis");
  if (opt.lambda0 == 0) throw ConfigError("lambda0 must be nonzero");
  FrameField ff;
  ff.grid = grid;
  ff.form = pair.form;
  ff.samples = opt.samples;
  ff.lambda0 = opt.lambda0;
  ff.pair = std::make_shared<PotentialPair>(pair);

  std::vector<double> xs(grid.nx), ys(grid.ny);
  for (int i = 0; i < grid.nx; ++i) xs[i] = grid.x(i);
  for (int j = 0; j < grid.ny; ++j) ys[j] = grid.y(j);

  const int M = opt.samples;
  switch (pair.relation) {
    case PsiRelation::independent:
      ff.fplus = integrate_potential(pair.chi, pair.form, xs, pair.x0, M, opt.integrate);
      ff.fminus = integrate_potential(pair.psi, pair.form, ys, pair.y0, M, opt.integrate);
      break;
    case PsiRelation::mirror:
    case PsiRelation::same: {
      // F-(y) = F+(-y) resp. F+(y): one integration over both node sets
      const double sg = pair.relation == PsiRelation::mirror ? -1 : 1;
      std::vector<double> all = xs;
      for (double y : ys) all.push_back(sg * y);
      const auto loops = integrate_potential(pair.chi, pair.form, all, pair.x0, M, opt.integrate);
      ff.fplus.assign(loops.begin(), loops.begin() + grid.nx);
      ff.fminus.assign(loops.begin() + grid.nx, loops.end());
      break;
    }
  }

  // F+ at lambda0: spectral lambda-derivative on the circle, variational ODE elsewhere
  if (std::abs(std::abs(opt.lambda0) - 1) < 1e-15) {
    ff.fplus_l0.resize(grid.nx);
    for (int i = 0; i < grid.nx; ++i)
      ff.fplus_l0[i] = {loop_eval(ff.fplus[i], opt.lambda0), loop_eval_lambda_derivative(ff.fplus[i], opt.lambda0)};
  } else {
    ff.fplus_l0 = integrate_at_lambda(pair.chi, opt.lambda0, xs, pair.x0, opt.integrate);
  }

  const auto& ker = kernels::active();
  std::vector<Mat2Batch> fplus_inv(grid.nx);
  for (int i = 0; i < grid.nx; ++i) ker.adj(ff.fplus[i].samples(), fplus_inv[i]);

  ff.nodes.assign(grid.size(), {});
  GC_PARALLEL_FOR
  for (int n = 0; n < grid.size(); ++n) {
    const int i = n % grid.nx, j = n / grid.nx;
    Mat2Batch phi;
    ker.mul(fplus_inv[i], ff.fminus[j].samples(), phi);
    BirkhoffOutcome o = try_birkhoff_left(TwistedLoop(std::move(phi), pair.form), opt.birkhoff);
    NodeFrame& nf = ff.nodes[n];
    nf.birkhoff = o.status;
    nf.residual = o.residual;
    nf.condition = o.condition;
    if (o.status != BirkhoffStatus::ok) {
      nf.state = NodeState::big_cell;
      continue;
    }
    nf.truncation = o.factors.truncation;
    const auto& c = o.factors.minus.coefficients();
    const double scale = std::max(1.0, c.max_norm());
    int last = 0;
    for (int k = 1; k < M / 2; ++k)
      if (norm(c[-k]) > 1e-17 * scale) last = k;
    nf.hminus.resize(last + 1);
    for (int k = 0; k <= last; ++k) nf.hminus[k] = c[-k];
    nf.hplus0 = o.factors.plus.coefficients()[0];
  }
  return ff;
}

void maurer_cartan_coeffs(const FrameField& ff, int i, int j, Mat2& A1, Mat2& Am1) {
  const NodeFrame& nf = ff.nodes[ff.grid.index(i, j)];
  A1 = ff.pair->chi(ff.grid.x(i)).p;
  Am1 = nf.hplus0 * ff.pair->psi(ff.grid.y(j)).m * nf.hplus0.inverse();
}

GaugeData gauge_cmc(const Mat2& A1, const Mat2& Am1, double H, double tol) {
  GaugeData g;
  g.A1 = A1;
  g.Am1 = Am1;
  const double c1 = A1.c.real(), b2 = Am1.b.real();
  if (std::abs(c1) <= tol * std::max(1.0, norm(A1)) || std::abs(b2) <= tol * std::max(1.0, norm(Am1)))
    throw RegularityFailure(fmt::format("frame is not regular: c1 = {:.3g}, b2 = {:.3g}", c1, b2));
  g.rho = std::pow(std::abs(b2 / c1), 0.25);
  g.T = Mat2::diag(g.rho, 1 / g.rho);
  g.eps1 = c1 > 0 ? 1 : -1;
  g.eps2 = b2 > 0 ? -1 : 1;
  g.conformal = -4 * c1 * b2 / (H * H);
  return g;
}

GaugeData gauge_psph(const Mat2& A1, const Mat2& Am1, double tol) {
  GaugeData g;
  g.A1 = A1;
  g.Am1 = Am1;
  const cplx p = A1.b, q = Am1.b;
  if (std::abs(p) <= tol * std::max(1.0, norm(A1)) || std::abs(q) <= tol * std::max(1.0, norm(Am1)))
    throw WeakRegularityFailure(fmt::format("frame is not weakly regular: |p| = {:.3g}, |q| = {:.3g}", std::abs(p),
                                            std::abs(q)));
  const double two_pi = 2 * M_PI;
  double phi = M_PI - (std::arg(p) - std::arg(q));
  phi -= two_pi * std::floor(phi / two_pi);
  g.theta = phi / 2;
  g.mu = (std::arg(p) + std::arg(q)) / 4;
  // mu is fixed modulo pi/2 by the sum of arguments; pick the branch with
  // [A1]_12 = i |p| e^{-i theta}
  const cplx target = cplx(0, std::abs(p)) * std::exp(cplx(0, -g.theta));
  if (std::abs(p * std::exp(cplx(0, -2 * g.mu)) - target) > std::abs(p)) g.mu += M_PI / 2;
  g.T = Mat2::diag(std::exp(cplx(0, g.mu)), std::exp(cplx(0, -g.mu)));
  g.fx = 2 * std::abs(p);
  g.fy = 2 * std::abs(q);
  return g;
}

void apply_gauges(FrameField& ff, const FrameGenOptions& opt) {
  ff.gauge.assign(ff.grid.size(), {});
  const bool cmc = ff.form == RealForm::split;
  for (int j = 0; j < ff.grid.ny; ++j)
    for (int i = 0; i < ff.grid.nx; ++i) {
      const int n = ff.grid.index(i, j);
      if (ff.nodes[n].state == NodeState::big_cell) continue;
      Mat2 A1, Am1;
      maurer_cartan_coeffs(ff, i, j, A1, Am1);
      try {
        ff.gauge[n] = cmc ? gauge_cmc(A1, Am1, ff.pair->H, opt.regularity_tolerance)
                          : gauge_psph(A1, Am1, opt.regularity_tolerance);
        ff.nodes[n].state = NodeState::ok;
        if (!cmc && std::abs(std::sin(2 * ff.gauge[n].theta)) < opt.singular_tolerance)
          ff.nodes[n].state = NodeState::singular;
      } catch (const RegularityFailure&) {
        ff.gauge[n].A1 = A1;
        ff.gauge[n].Am1 = Am1;
        ff.nodes[n].state = NodeState::irregular;
      }
    }
}

Coords3 sym_cmc_point(const PointFrame& F, double H) {
  const Mat2 Fi = F.F.inverse();
  const Mat2 S = 2.0 * F.dF * Fi - F.F * basis::e2 * Fi;
  return from_matrix(Metric::minkowski, (S + basis::e2) * (1 / (2 * H)));
}

Coords3 sym_cmc_normal(const Mat2& F) { return from_matrix(Metric::minkowski, F * basis::e2 * F.inverse()); }

Coords3 sym_psph_point(const PointFrame& F) { return from_matrix(Metric::euclidean, F.dF * F.F.inverse()); }

Coords3 sym_psph_normal(const Mat2& F) { return from_matrix(Metric::euclidean, F * basis::su3 * F.inverse()); }

SurfaceSamples sym_surface(const FrameField& ff) {
  const PotentialPair& pp = *ff.pair;
  SurfaceSamples s;
  s.grid = ff.grid;
  s.metric = metric_of(ff.form);
  s.lambda0 = ff.lambda0;
  s.H = pp.H;
  s.kind = pp.kind;
  const int n = ff.grid.size();
  s.point.assign(n, {0, 0, 0});
  s.normal.assign(n, {0, 0, 0});
  s.state.resize(n);
  const bool cmc = ff.form == RealForm::split;
  if (!ff.gauge.empty()) {
    s.scalars.resize(n);
    for (int k = 0; k < n; ++k) {
      const GaugeData& g = ff.gauge[k];
      s.scalars[k] = {g.eps1, g.eps2, g.conformal, g.theta, g.fx, g.fy};
    }
  }
  GC_PARALLEL_FOR
  for (int k = 0; k < n; ++k) {
    s.state[k] = ff.nodes[k].state;
    if (s.state[k] == NodeState::big_cell) continue;
    const int i = k % ff.grid.nx, j = k / ff.grid.nx;
    const PointFrame F = ff.frame_at(i, j);
    const Coords3 f = cmc ? sym_cmc_point(F, pp.H) : sym_psph_point(F);
    const Coords3 N = cmc ? sym_cmc_normal(F.F) : sym_psph_normal(F.F);
    s.point[k] = pp.placement.point(f);
    const Coords3 v = pp.placement.vector(N);
    s.normal[k] = {pp.placement.normal_sign * v[0], pp.placement.normal_sign * v[1], pp.placement.normal_sign * v[2]};
  }
  return s;
}

}  // namespace gcauchy
