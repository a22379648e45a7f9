#include <gtest/gtest.h>

#include <cmath>

#include "gcauchy/surface.hpp"

using namespace gcauchy;

namespace {

CurveData euclid(const std::string& s, bool pn = false) { return ingest_curve(CurveSpec::parse(s), {Metric::euclidean, pn}); }
CurveData mink(const std::string& s) { return ingest_curve(CurveSpec::parse(s), {Metric::minkowski, false}); }

SurfaceSamples gauged_surface(const PotentialPair& pp, const GridSpec& g, const FrameGenOptions& o = {}) {
  auto ff = build_frame_field(pp, g, o);
  apply_gauges(ff, o);
  return sym_surface(ff);
}

// analytic mesh without gauge scalars
template <class F, class N>
SurfaceSamples analytic_mesh(const GridSpec& g, F f, N n) {
  SurfaceSamples s;
  s.grid = g;
  s.metric = Metric::euclidean;
  s.kind = CaseKind::psph_general;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      s.point.push_back(f(g.x(i), g.y(j)));
      s.normal.push_back(n(g.x(i), g.y(j)));
      s.state.push_back(NodeState::ok);
    }
  return s;
}

Coords3 normalized(Coords3 v) {
  const double l = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / l, v[1] / l, v[2] / l};
}

// constant asymptotic-coordinate potentials; |f_x| = 2b, |f_y| = 2|alpha|
PotentialPair constant_characteristic(double b, cplx alpha) {
  const cplx I(0, 1);
  PotentialPair pp;
  pp.form = RealForm::unitary;
  pp.kind = CaseKind::psph_asymptotic;
  pp.relation = PsiRelation::independent;
  pp.chi = [=](double) {
    Laurent3 a;
    a.p = Mat2{0.0, I * b, I * b, 0.0};
    return a;
  };
  pp.psi = [=](double) {
    Laurent3 a;
    a.m = Mat2{0.0, alpha, -std::conj(alpha), 0.0};
    return a;
  };
  return pp;
}

PotentialPair helix_psph(double t0 = 0) {
  const auto d = euclid("helix");
  return potential_psph_noncharacteristic(d, classify(d, -2, 2), t0);
}

}  // namespace

TEST(Surface, CylinderMeanCurvatureConvergesAtSecondOrder) {
  const double rho = 1, H = -0.5;
  const auto pp = potential_revolution_timelike(rho, H);
  const auto coarse = mean_curvature(gauged_surface(pp, GridSpec::centred(0, 0, 1, 41)), -1 / (2 * rho));
  const auto fine = mean_curvature(gauged_surface(pp, GridSpec::centred(0, 0, 1, 81)), -1 / (2 * rho));
  EXPECT_TRUE(fine.report.pass) << fine.report.max;
  EXPECT_LE(fine.report.max, 1e-4);
  EXPECT_NEAR(convergence_rate(coarse.report.max, fine.report.max), 2, 0.1);
}

TEST(Surface, MeanCurvatureWithoutGaugeScalars) {
  const auto pp = potential_revolution_timelike(0.8, -0.625);
  auto s = gauged_surface(pp, GridSpec::centred(0, 0, 0.5, 21));
  s.scalars.clear();
  const auto r = mean_curvature(s, -0.625, 1e-3);
  EXPECT_TRUE(r.report.pass) << r.report.max;
}

TEST(Surface, PseudosphereAndSphereControls) {
  const GridSpec g{0.5, 1.5, 0, 1, 41, 41};
  auto sech = [](double u) { return 1 / std::cosh(u); };
  const auto tractricoid = analytic_mesh(
      g,
      [&](double u, double v) { return Coords3{sech(u) * std::cos(v), sech(u) * std::sin(v), u - std::tanh(u)}; },
      [&](double u, double v) {
        const Coords3 fu{-sech(u) * std::tanh(u) * std::cos(v), -sech(u) * std::tanh(u) * std::sin(v),
                         std::tanh(u) * std::tanh(u)};
        const Coords3 fv{-sech(u) * std::sin(v), sech(u) * std::cos(v), 0};
        return normalized(cross(Metric::euclidean, fu, fv));
      });
  const auto k = gauss_curvature(tractricoid, -1, 1e-3);
  EXPECT_TRUE(k.report.pass) << k.report.max;

  const GridSpec gs{-0.5, 0.5, 0, 1, 41, 41};
  const auto sphere = analytic_mesh(
      gs, [](double u, double v) { return Coords3{std::cos(u) * std::cos(v), std::cos(u) * std::sin(v), std::sin(u)}; },
      [](double u, double v) { return Coords3{std::cos(u) * std::cos(v), std::cos(u) * std::sin(v), std::sin(u)}; });
  const auto ks = gauss_curvature(sphere, -1, 1e-2);
  EXPECT_FALSE(ks.report.pass);
  EXPECT_NEAR(ks.report.mean, 2, 1e-2);  // K close to +1
  EXPECT_NEAR(ks.value[gs.index(20, 20)], 1, 1e-2);
}

TEST(Surface, ConstantCharacteristicPotentials) {
  const auto pp = constant_characteristic(0.5, 0.5);
  const auto a = gauged_surface(pp, GridSpec::centred(0, 0, 0.5, 21));
  const auto b = gauged_surface(pp, GridSpec::centred(0, 0, 0.5, 41));
  const auto k = gauss_curvature(b, -1, 1e-3);
  EXPECT_TRUE(k.report.pass) << k.report.max;
  const auto sa = sine_gordon_residual(a), sb = sine_gordon_residual(b);
  EXPECT_NEAR(convergence_rate(sa.residual.max, sb.residual.max), 2, 0.15);
  EXPECT_LE(sb.codazzi.max, 1e-10);
  for (const auto& n : b.scalars) {
    EXPECT_NEAR(n.fx, 1, 1e-10);
    EXPECT_NEAR(n.fy, 1, 1e-10);
  }
}

TEST(Surface, DegeneratePhiFieldIsFlagged) {
  SurfaceSamples s;
  s.grid = GridSpec::centred(0, 0, 1, 9);
  s.metric = Metric::euclidean;
  s.point.assign(s.grid.size(), Coords3{0, 0, 0});
  s.normal.assign(s.grid.size(), Coords3{0, 0, 1});
  s.state.assign(s.grid.size(), NodeState::singular);
  s.scalars.assign(s.grid.size(), NodeScalars{0, 0, 0, 0, 1, 1});
  const auto r = sine_gordon_residual(s);
  EXPECT_EQ(r.residual.max, 0);
  EXPECT_GT(r.residual.count, 0);
  EXPECT_NE(r.residual.note.find("49 stencils centred on non-regular"), std::string::npos) << r.residual.note;
  EXPECT_EQ(gauss_curvature(s).report.count, 0);
}

TEST(Surface, CauchyResidualOfTheCylinder) {
  const auto pp = potential_revolution_timelike(1, -0.5);
  const auto s = gauged_surface(pp, GridSpec::centred(0, 0, 1, 41));
  const auto r = cauchy_residual(s, mink("circle"), pp);
  EXPECT_TRUE(r.pass) << r.note;
  EXPECT_NE(r.note.find("derivative"), std::string::npos);
}

TEST(Surface, CauchyResidualAlongBothNullLines) {
  const auto data = mink("null-line");
  const auto pp = potential_cmc_null(data, 0.5, [](double) { return cplx(1); }, [](double) { return cplx(0); }, 0);
  const auto s = gauged_surface(pp, GridSpec::centred(0, 0, 0.5, 41));
  const auto r = cauchy_residual(s, data, pp);
  EXPECT_TRUE(r.pass) << r.note;
  // all of row y = 0, column x = 0 minus its two-node margins
  EXPECT_NE(r.note.find("derivative 3"), std::string::npos);
  EXPECT_NE(r.note.find("over 78"), std::string::npos) << r.note;
}

TEST(Surface, CauchyResidualOfAsymptoticData) {
  const auto data = euclid("asymptotic-helix");
  const auto pp = potential_psph_characteristic(data, [](double y) { return cplx(0.5, 0.1 * y); }, 0, -2, 2);
  const auto s = gauged_surface(pp, GridSpec::centred(0, 0, 0.5, 41));
  const auto r = cauchy_residual(s, data, pp);
  EXPECT_TRUE(r.pass) << r.note;
  // |f_y| = 2 |alpha| along the base column
  const GridSpec& g = s.grid;
  for (int j = 2; j + 2 < g.ny; j += 5) {
    const auto d = [&](int jj) { return s.at(20, jj); };
    Coords3 fy;
    for (int c = 0; c < 3; ++c) fy[c] = (8 * (d(j + 1)[c] - d(j - 1)[c]) - (d(j + 2)[c] - d(j - 2)[c])) / (12 * g.hy());
    EXPECT_NEAR(std::sqrt(fy[0] * fy[0] + fy[1] * fy[1] + fy[2] * fy[2]), 2 * std::abs(cplx(0.5, 0.1 * g.y(j))), 1e-6);
  }
}

TEST(Surface, PerturbedPotentialsMoveTheResidualLinearly) {
  const auto data = mink("timelike-helix");
  const auto base = potential_cmc_noncharacteristic(data, 0.7, classify(data, -1, 1), 0);
  auto residual = [&](double eps) {
    PotentialPair pp = base;
    pp.chi = [chi = base.chi, eps](double t) {
      Laurent3 a = chi(t);
      a.z += basis::e2 * eps;
      return a;
    };
    return cauchy_residual(gauged_surface(pp, GridSpec::centred(0, 0, 0.5, 41)), data, base).max;
  };
  EXPECT_LT(residual(0), 1e-5);
  const double r1 = residual(1e-3), r2 = residual(2e-3);
  EXPECT_GT(r1, 1e-4);
  EXPECT_NEAR(r2 / r1, 2, 0.1);
}

TEST(Surface, EllipseIsAGeodesic) {
  const auto data = euclid("ellipse", true);
  const auto pp = potential_psph_noncharacteristic(data, classify(data, -4, 4), 0);
  const auto s = gauged_surface(pp, GridSpec::centred(0, 0, 0.75, 41));
  const auto r = geodesic_residual(s, data, pp);
  EXPECT_TRUE(r.pass) << r.max;
  EXPECT_GT(r.count, 30);
}

TEST(Surface, CircleGeodesicAgainstFrenetFrame) {
  // the mesh normal along a geodesic circle is the principal normal, and the
  // normal curvature is the curvature 1/r
  const double r = 2;
  const auto data = euclid("circle:r=2", true);
  const auto pp = potential_psph_noncharacteristic(data, classify(data, -3, 3), 0);
  const auto s = gauged_surface(pp, GridSpec::centred(0, 0, 0.5, 41));
  EXPECT_TRUE(geodesic_residual(s, data, pp).pass);
  const GridSpec& g = s.grid;
  for (int i = 5; i < g.nx - 5; i += 5) {
    const int j = g.nx - 1 - i;
    const CurveJet c = data.at(g.x(i));
    const Coords3 frenet{-std::cos(g.x(i)), -std::sin(g.x(i)), 0};
    const Coords3& n = s.normal[g.index(i, j)];
    const double kn = ip(Metric::euclidean, c.ddf, n) / ip(Metric::euclidean, c.df, c.df);
    EXPECT_NEAR(std::abs(ip(Metric::euclidean, n, frenet)), 1, 1e-12);
    EXPECT_NEAR(std::abs(kn), 1 / r, 1e-12);
  }
}

TEST(Surface, ParabolaSineGordonConvergence) {
  const auto data = euclid("parabola", true);
  const auto pp = potential_psph_noncharacteristic(data, classify(data, -2, 2), 0);
  const auto a = sine_gordon_residual(gauged_surface(pp, GridSpec::centred(0, 0, 0.6, 21)));
  const auto b = sine_gordon_residual(gauged_surface(pp, GridSpec::centred(0, 0, 0.6, 41)));
  EXPECT_NEAR(convergence_rate(a.residual.max, b.residual.max), 2, 0.15);
  EXPECT_TRUE(b.codazzi.pass) << b.codazzi.max;
}

TEST(Surface, NormalsAgreeWithCrossProducts) {
  const auto psph = gauged_surface(helix_psph(), GridSpec::centred(0, 0, 0.5, 41));
  EXPECT_TRUE(normal_unit(psph).pass);
  EXPECT_TRUE(normal_consistency(psph).pass) << normal_consistency(psph).note;

  const auto data = mink("timelike-helix");
  const auto pp = potential_cmc_noncharacteristic(data, 0.7, classify(data, -1, 1), 0);
  const auto a = normal_consistency(gauged_surface(pp, GridSpec::centred(0, 0, 0.5, 21)));
  const auto b = normal_consistency(gauged_surface(pp, GridSpec::centred(0, 0, 0.5, 41)));
  EXPECT_TRUE(b.pass) << b.note;
  EXPECT_NEAR(convergence_rate(a.max, b.max), 2, 0.2);
}

TEST(Surface, FlippedNormalGivesTheSameSurface) {
  const auto data = euclid("helix");
  CurveData flipped = data;
  flipped.jet = [j = data.jet](double t) {
    CurveJet c = j(t);
    for (int k = 0; k < 3; ++k) c.w[k] = -c.w[k], c.dw[k] = -c.dw[k], c.ddw[k] = -c.ddw[k];
    return c;
  };
  const auto ra = classify(data, -2, 2), rb = classify(flipped, -2, 2);
  EXPECT_NE(ra.normal_flipped, rb.normal_flipped);
  const GridSpec g = GridSpec::centred(0, 0, 0.5, 11);
  const auto a = gauged_surface(potential_psph_noncharacteristic(data, ra, 0), g);
  const auto b = gauged_surface(potential_psph_noncharacteristic(flipped, rb, 0), g);
  for (int k = 0; k < g.size(); ++k)
    for (int c = 0; c < 3; ++c) {
      EXPECT_NEAR(a.point[k][c], b.point[k][c], 1e-10);
      EXPECT_NEAR(a.normal[k][c], -b.normal[k][c], 1e-10);
    }
}

TEST(Surface, AssociatedFamilyKeepsItsCurvature) {
  FrameGenOptions o;
  o.lambda0 = 1.3;
  const auto data = mink("timelike-helix");
  const auto pp = potential_cmc_noncharacteristic(data, 0.7, classify(data, -1, 1), 0);
  // same stencil error as at lambda0 = 1 on this grid
  const auto h = mean_curvature(gauged_surface(pp, GridSpec::centred(0, 0, 0.5, 41), o), 0.7, 1e-3);
  EXPECT_TRUE(h.report.pass) << h.report.max;
  const auto k = gauss_curvature(gauged_surface(helix_psph(), GridSpec::centred(0, 0, 0.5, 41), o));
  EXPECT_TRUE(k.report.pass) << k.report.max;
}

TEST(Surface, DiagnosticsJsonKeyOrder) {
  DiagnosticsReport d;
  CheckReport c;
  c.name = "gauss_curvature";
  c.max = 0.5;
  c.tolerance = 1;
  c.count = 3;
  c.rate = 2.0;
  c.finish();
  d.checks.push_back(c);
  d.checks.push_back(CheckReport{.name = "empty"});
  const std::string js = d.to_json();
  EXPECT_FALSE(d.all_pass());
  const std::vector<std::string> keys{"\"all_pass\"", "\"checks\"", "\"name\"", "\"max\"", "\"mean\"", "\"count\"",
                                      "\"excluded\"", "\"tolerance\"", "\"rate\"", "\"pass\"", "\"note\""};
  std::size_t at = 0;
  for (const auto& k : keys) {
    const auto p = js.find(k, at);
    ASSERT_NE(p, std::string::npos) << k;
    at = p;
  }
  EXPECT_NE(js.find("\"rate\": null"), std::string::npos);
  EXPECT_EQ(js, d.to_json());
}
