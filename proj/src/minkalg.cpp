#include "gcauchy/minkalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcauchy/errors.hpp"

namespace gcauchy {

const char* to_string(RealForm f) { return f == RealForm::split ? "split" : "unitary"; }

Mat2 to_matrix(const Vec3L& v) { return {-v.x2, -v.t + v.x1, v.t + v.x1, v.x2}; }

Mat2 to_matrix(const Vec3E& v) {
  return {cplx(0, 0.5 * v.z), cplx(-0.5 * v.y, 0.5 * v.x), cplx(0.5 * v.y, 0.5 * v.x),
          cplx(0, -0.5 * v.z)};
}

Vec3L vec_l(const Mat2& m) {
  return {0.5 * (m.c.real() - m.b.real()), 0.5 * (m.c.real() + m.b.real()),
          0.5 * (m.d.real() - m.a.real())};
}

Vec3E vec_e(const Mat2& m) {
  return {(m.b + m.c).imag(), (m.c - m.b).real(), (m.a - m.d).imag()};
}

Mat2 to_matrix(Metric g, const Coords3& v) {
  return g == Metric::minkowski ? to_matrix(Vec3L::from(v)) : to_matrix(Vec3E::from(v));
}

Coords3 from_matrix(Metric g, const Mat2& m) {
  return g == Metric::minkowski ? vec_l(m).coords() : vec_e(m).coords();
}

double ip_l3(const Vec3L& u, const Vec3L& v) { return -u.t * v.t + u.x1 * v.x1 + u.x2 * v.x2; }
double ip_e3(const Vec3E& u, const Vec3E& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }

double ip(Metric g, const Coords3& u, const Coords3& v) {
  const double s = u[0] * v[0];
  return (g == Metric::minkowski ? -s : s) + u[1] * v[1] + u[2] * v[2];
}

namespace {
Coords3 euclid_cross(const Coords3& u, const Coords3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}
}  // namespace

Coords3 cross(Metric g, const Coords3& u, const Coords3& v) {
  Coords3 w = euclid_cross(u, v);
  if (g == Metric::minkowski) w[0] = -w[0];  // raise the index with eta
  return w;
}

Vec3L cross(const Vec3L& u, const Vec3L& v) {
  return Vec3L::from(cross(Metric::minkowski, u.coords(), v.coords()));
}
Vec3E cross(const Vec3E& u, const Vec3E& v) {
  return Vec3E::from(cross(Metric::euclidean, u.coords(), v.coords()));
}

void GroupElement2::validate(double tol) const {
  if (std::abs(m.det() - 1.0) > tol) throw FormMismatch("group element: det != 1");
  if (form == RealForm::split) {
    if (max_imag(m) > tol * std::max(1.0, max_abs_entry(m)))
      throw FormMismatch("split group element has complex entries");
  } else {
    const Mat2 p = m.adjoint() * m - Mat2::identity();
    if (norm(p) > tol) throw FormMismatch("unitary group element is not unitary");
  }
}

Vec3L ad(const GroupElement2& g, const Vec3L& v) {
  if (g.form != RealForm::split) throw FormMismatch("ad: Vec3L needs a split-form element");
  return vec_l(g.m * to_matrix(v) * g.m.inverse());
}

Vec3E ad(const GroupElement2& g, const Vec3E& v) {
  if (g.form != RealForm::unitary) throw FormMismatch("ad: Vec3E needs a unitary element");
  return vec_e(g.m * to_matrix(v) * g.m.inverse());
}

Coords3 ad(const GroupElement2& g, Metric metric, const Coords3& v) {
  return metric == Metric::minkowski ? ad(g, Vec3L::from(v)).coords()
                                     : ad(g, Vec3E::from(v)).coords();
}

Mat2 lie_iso(Metric g, const Mat3& w) {
  if (g == Metric::minkowski) {
    const double x0 = (w[2][1] - w[1][2]) / 4.0;
    const double x1 = (-w[2][0] - w[0][2]) / 4.0;
    const double x2 = (w[1][0] + w[0][1]) / 4.0;
    return to_matrix(Vec3L{x0, x1, x2});
  }
  const double x1 = (w[2][1] - w[1][2]) / 2.0;
  const double x2 = (w[0][2] - w[2][0]) / 2.0;
  const double x3 = (w[1][0] - w[0][1]) / 2.0;
  return to_matrix(Vec3E{x1, x2, x3});
}

Mat3 mat3_mul(const Mat3& x, const Mat3& y) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += x[i][k] * y[k][j];
  return r;
}

Mat3 frame_inverse(Metric g, const Mat3& r) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = r[j][i];
  if (g == Metric::minkowski) {
    for (int j = 1; j < 3; ++j) t[0][j] = -t[0][j];
    for (int i = 1; i < 3; ++i) t[i][0] = -t[i][0];
  }
  return t;
}

Mat3 frame_from_columns(const Coords3& c0, const Coords3& c1, const Coords3& c2) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    r[i][0] = c0[i];
    r[i][1] = c1[i];
    r[i][2] = c2[i];
  }
  return r;
}

Coords3 column(const Mat3& r, int j) { return {r[0][j], r[1][j], r[2][j]}; }

Coords3 mat3_apply(const Mat3& r, const Coords3& v) {
  Coords3 w{};
  for (int i = 0; i < 3; ++i) w[i] = r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2];
  return w;
}

double orthonormality_defect(Metric g, const Mat3& r) {
  const Mat3 p = mat3_mul(frame_inverse(g, r), r);
  double worst = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(p[i][j] - (i == j ? 1.0 : 0.0)));
  return worst;
}

Mat3 gram_schmidt(Metric g, const Mat3& r) {
  Coords3 c[3] = {column(r, 0), column(r, 1), column(r, 2)};
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < j; ++k) {
      const double s = ip(g, c[j], c[k]) / ip(g, c[k], c[k]);
      for (int i = 0; i < 3; ++i) c[j][i] -= s * c[k][i];
    }
    const double n = std::sqrt(std::abs(ip(g, c[j], c[j])));
    for (int i = 0; i < 3; ++i) c[j][i] /= n;
  }
  return frame_from_columns(c[0], c[1], c[2]);
}

Mat3 ad_frame(const GroupElement2& g) {
  const Metric metric = metric_of(g.form);
  const Coords3 b0{1, 0, 0}, b1{0, 1, 0}, b2{0, 0, 1};
  return frame_from_columns(ad(g, metric, b0), ad(g, metric, b1), ad(g, metric, b2));
}

namespace {

Mat2 renormalize(const Mat2& m) {
  const cplx s = std::sqrt(m.det());
  return m * (1.0 / s);
}

}  // namespace

std::vector<GroupElement2> lift_frame_path(Metric g, const std::function<FrameJet(double)>& path,
                                           const std::vector<double>& times, double t0,
                                           const GroupElement2& init, const LiftOptions& opt) {
  auto generator = [&](double t) {
    FrameJet jet = path(t);
    const double defect = orthonormality_defect(g, jet.frame);
    if (defect > opt.correctable)
      throw HypothesisViolation("frame path is not orthonormal at t = " + std::to_string(t) +
                                " (defect " + std::to_string(defect) + ")");
    if (defect > opt.tolerance) jet.frame = gram_schmidt(g, jet.frame);
    return lie_iso(g, mat3_mul(frame_inverse(g, jet.frame), jet.derivative));
  };

  auto advance = [&](Mat2 F, double ta, double tb) {
    const double span = tb - ta;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) * opt.steps_per_unit)));
    const double h = span / n;
    for (int s = 0; s < n; ++s) {
      const double t = ta + s * h;
      const Mat2 k1 = F * generator(t);
      const Mat2 k2 = (F + (0.5 * h) * k1) * generator(t + 0.5 * h);
      const Mat2 k3 = (F + (0.5 * h) * k2) * generator(t + 0.5 * h);
      const Mat2 k4 = (F + h * k3) * generator(t + h);
      F = F + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      F = renormalize(F);
    }
    return F;
  };

  const RealForm form = g == Metric::minkowski ? RealForm::split : RealForm::unitary;
  std::vector<GroupElement2> out(times.size(), GroupElement2{init.m, form});
  const auto split = std::lower_bound(times.begin(), times.end(), t0) - times.begin();
  Mat2 F = init.m;
  double t = t0;
  for (std::size_t i = split; i < times.size(); ++i) {
    F = advance(F, t, times[i]);
    t = times[i];
    out[i].m = F;
  }
  F = init.m;
  t = t0;
  for (std::ptrdiff_t i = split - 1; i >= 0; --i) {
    F = advance(F, t, times[i]);
    t = times[i];
    out[i].m = F;
  }
  return out;
}

}  // namespace gcauchy
