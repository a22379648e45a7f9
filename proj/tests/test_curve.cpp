#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "gcauchy/curve.hpp"
#include "gcauchy/errors.hpp"

using namespace gcauchy;

namespace {

double dist(const Coords3& a, const Coords3& b) {
  return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

Coords3 neg(const Coords3& a) { return {-a[0], -a[1], -a[2]}; }

CurveData euclid(const std::string& s, bool pn = false) {
  return ingest_curve(CurveSpec::parse(s), {Metric::euclidean, pn});
}
CurveData mink(const std::string& s) { return ingest_curve(CurveSpec::parse(s), {Metric::minkowski, false}); }

std::string tmp_path(const char* name) { return std::string(::testing::TempDir()) + name; }

void write_circle_csv(const std::string& path, int n, bool with_field) {
  std::ofstream out(path);
  out << (with_field ? "t,fx,fy,fz,vx,vy,vz\n" : "t,fx,fy,fz\n");
  for (int i = 0; i < n; ++i) {
    const double t = -1 + 2.0 * i / (n - 1);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,0", t, std::cos(t), std::sin(t));
    out << buf;
    if (with_field) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g,0", -std::cos(t), -std::sin(t));
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace

TEST(Curve, SpecParsing) {
  auto s = CurveSpec::parse("ellipse:a=1,b=2");
  EXPECT_EQ(s.name, "ellipse");
  EXPECT_EQ(s.params.at("a"), 1.0);
  EXPECT_EQ(s.params.at("b"), 2.0);
  EXPECT_EQ(CurveSpec::parse(s.str()).params, s.params);
  EXPECT_EQ(CurveSpec::parse("parabola").name, "parabola");
  EXPECT_EQ(CurveSpec::parse("data/c.csv").csv_path, "data/c.csv");
  EXPECT_THROW(CurveSpec::parse("ellipse:a"), ConfigError);
  EXPECT_THROW(CurveSpec::parse("ellipse:a=x"), ConfigError);
  EXPECT_THROW(euclid("ellipse:c=1"), ConfigError);
  EXPECT_THROW(euclid("nosuch"), ConfigError);
}

TEST(Curve, ParabolaPrincipalNormal) {
  const auto c = euclid("parabola");
  for (double t : {-1.3, -0.2, 0.0, 0.7, 2.0}) {
    const auto j = c.at(t);
    EXPECT_LT(dist(j.f, {t, t * t, 0}), 1e-15);
    EXPECT_LT(dist(j.df, {1, 2 * t, 0}), 1e-15);
    EXPECT_LT(dist(j.ddf, {0, 2, 0}), 1e-15);
    const double s = 1 / std::sqrt(1 + 4 * t * t);
    const Coords3 n{2 * t * s, -s, 0};
    EXPECT_LT(std::min(dist(j.w, n), dist(j.w, neg(n))), 1e-14) << t;
    // derivative of the normal against a central difference of the jet
    const double h = 1e-5;
    const auto a = c.at(t + h), b = c.at(t - h);
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(j.dw[k], (a.w[k] - b.w[k]) / (2 * h), 1e-8);
      EXPECT_NEAR(j.ddw[k], (a.dw[k] - b.dw[k]) / (2 * h), 1e-7);
    }
  }
}

TEST(Curve, Lemniscate) {
  const auto c = euclid("lemniscate");
  for (double t : {-1.0, 0.0, 0.4, 2.5}) {
    const double d = 1 + std::sin(t) * std::sin(t);
    EXPECT_LT(dist(c.at(t).f, {std::cos(t) / d, std::sin(2 * t) / (2 * d), 0}), 1e-15);
  }
}

TEST(Curve, CircleAndHelixFrenet) {
  const auto c = euclid("circle:r=2");
  const auto j = c.at(0.3);
  EXPECT_LT(dist(j.ddf, neg(j.f)), 1e-14);
  EXPECT_LT(dist(j.w, {-std::cos(0.3), -std::sin(0.3), 0}), 1e-14);

  const auto h = euclid("helix:a=1,b=0.5");
  const auto k = h.at(1.1);
  EXPECT_LT(dist(k.w, {-std::cos(1.1), -std::sin(1.1), 0}), 1e-14);

  // binormal of the a = b = 1/2 helix, torsion 1: B' = -|f'| N
  const auto ah = euclid("asymptotic-helix");
  const auto m = ah.at(0.8);
  const double speed = std::sqrt(0.5);
  const Coords3 n{-std::cos(0.8), -std::sin(0.8), 0};
  EXPECT_LT(dist(m.dw, {-speed * n[0], -speed * n[1], 0}), 1e-14);
}

TEST(Curve, GeodesicFillReplacesField) {
  const auto c = euclid("line", false);
  EXPECT_LT(dist(c.at(0.5).w, {0, std::cos(0.5), std::sin(0.5)}), 1e-15);
  EXPECT_THROW(euclid("line", true).at(0.5), HypothesisViolation);
}

TEST(Curve, NullLineField) {
  const auto c = mink("null-line");
  for (double x : {-0.4, 0.0, 0.3}) {
    const auto j = c.at(x);
    EXPECT_LT(dist(j.w, {2 * (1 + x * x), 2 * (x * x - 1), -4 * x}), 1e-14);
    EXPECT_LT(dist(j.f, {2 * x, 2 * x, -1}), 1e-15);
  }
}

TEST(Curve, MinkowskiModels) {
  const auto c = mink("circle:r=1.5");
  const auto j = c.at(0.2);
  EXPECT_LT(dist(j.f, {0, 1.5 * std::sin(0.2), 1.5 * std::cos(0.2)}), 1e-15);
  EXPECT_LT(dist(j.w, {1.5, 0, 0}), 1e-15);
  EXPECT_THROW(mink("parabola"), ConfigError);
  EXPECT_THROW(ingest_curve(CurveSpec::parse("circle"), {Metric::minkowski, true}), ConfigError);
}

TEST(Curve, FourthOrderDifferences) {
  // sampled circle: the derivative error drops ~16x per halving, ends included
  double prev[2] = {0, 0};
  for (int level = 0; level < 3; ++level) {
    const int n = 21 << level;
    const double h = 2.0 / (n - 1);
    std::vector<Coords3> v(n);
    for (int i = 0; i < n; ++i) {
      const double t = -1 + i * h;
      v[i] = {std::cos(t), std::sin(t), 0};
    }
    const auto d1 = diff1(v, h), d2 = diff2(v, h);
    double e1 = 0, e2 = 0;
    for (int i = 0; i < n; ++i) {
      const double t = -1 + i * h;
      e1 = std::max(e1, dist(d1[i], {-std::sin(t), std::cos(t), 0}));
      e2 = std::max(e2, dist(d2[i], {-std::cos(t), -std::sin(t), 0}));
    }
    if (level > 0) {
      EXPECT_GT(prev[0] / e1, 13.0);
      EXPECT_GT(prev[1] / e2, 13.0);
    }
    prev[0] = e1;
    prev[1] = e2;
  }
}

TEST(Curve, CsvCircle) {
  const auto path = tmp_path("gc_circle.csv");
  write_circle_csv(path, 161, true);
  const auto c = ingest_curve(CurveSpec::parse(path), {Metric::euclidean, false});
  EXPECT_FALSE(c.analytic);
  EXPECT_DOUBLE_EQ(c.t_min, -1.0);
  for (double t : {-0.95, -0.31, 0.0, 0.5531, 1.0}) {
    const auto j = c.at(t);
    EXPECT_LT(dist(j.f, {std::cos(t), std::sin(t), 0}), 1e-9);
    EXPECT_LT(dist(j.df, {-std::sin(t), std::cos(t), 0}), 1e-7);
    EXPECT_LT(dist(j.ddf, {-std::cos(t), -std::sin(t), 0}), 1e-5);
    EXPECT_LT(dist(j.dw, {std::sin(t), -std::cos(t), 0}), 1e-7);
  }
  EXPECT_THROW(c.at(1.5), HypothesisViolation);

  // no field columns: the principal normal fill is required
  write_circle_csv(path, 41, false);
  EXPECT_THROW(ingest_curve(CurveSpec::parse(path), {Metric::euclidean, false}), ConfigError);
  const auto p = ingest_curve(CurveSpec::parse(path), {Metric::euclidean, true});
  EXPECT_LT(dist(p.at(0.2).w, {-std::cos(0.2), -std::sin(0.2), 0}), 1e-5);
}

TEST(Curve, CsvRejections) {
  const auto path = tmp_path("gc_bad.csv");
  write_circle_csv(path, 8, true);
  EXPECT_THROW(ingest_curve(CurveSpec::parse(path), {}), ConfigError);
  {
    std::ofstream out(path);
    out << "t,fx,fy,fz,vx,vy,vz\n";
    for (int i = 0; i < 12; ++i) out << (i == 5 ? 5.3 : i) << ",0,0,0,1,0,0\n";
  }
  EXPECT_THROW(ingest_curve(CurveSpec::parse(path), {}), ConfigError);
  {
    std::ofstream out(path);
    out << "t,x,y,z\n0,0,0,0\n";
  }
  EXPECT_THROW(ingest_curve(CurveSpec::parse(path), {}), ConfigError);
  {
    std::ofstream out(path);
    out << "t,fx,fy,fz\n0,0,0\n";
  }
  EXPECT_THROW(ingest_curve(CurveSpec::parse(path), {}), ConfigError);
  EXPECT_THROW(ingest_curve(CurveSpec::parse("/nonexistent/x.csv"), {}), ConfigError);
}
