#pragma once

// sl(2,R) = L^3 and su(2) = E^3 identifications.
//
// Split form, basis of sl(2,R), metric <X,Y> = tr(XY)/2 of signature (-,+,+):
//   e0 = [[0,-1],[1,0]]   e1 = [[0,1],[1,0]]   e2 = [[-1,0],[0,1]]
// Unitary form, basis of su(2), metric <X,Y> = -2 tr(XY):
//   e1 = 1/2 [[0,i],[i,0]]   e2 = 1/2 [[0,-1],[1,0]]   e3 = 1/2 [[i,0],[0,-i]]
// All sign conventions live here and nowhere else.

#include <array>
#include <functional>
#include <vector>

#include "gcauchy/mat2.hpp"

namespace gcauchy {

enum class RealForm { split, unitary };
enum class Metric { minkowski, euclidean };

inline Metric metric_of(RealForm f) { return f == RealForm::split ? Metric::minkowski : Metric::euclidean; }
const char* to_string(RealForm f);

using Coords3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;  // row-major; columns hold frame vectors

struct Vec3L {
  double t = 0, x1 = 0, x2 = 0;
  Coords3 coords() const { return {t, x1, x2}; }
  static Vec3L from(const Coords3& c) { return {c[0], c[1], c[2]}; }
};

struct Vec3E {
  double x = 0, y = 0, z = 0;
  Coords3 coords() const { return {x, y, z}; }
  static Vec3E from(const Coords3& c) { return {c[0], c[1], c[2]}; }
};

namespace basis {
inline const Mat2 e0{0.0, -1.0, 1.0, 0.0};
inline const Mat2 e1{0.0, 1.0, 1.0, 0.0};
inline const Mat2 e2{-1.0, 0.0, 0.0, 1.0};

inline const Mat2 su1{0.0, cplx(0, 0.5), cplx(0, 0.5), 0.0};
inline const Mat2 su2{0.0, -0.5, 0.5, 0.0};
inline const Mat2 su3{cplx(0, 0.5), 0.0, 0.0, cplx(0, -0.5)};
}  // namespace basis

Mat2 to_matrix(const Vec3L& v);
Mat2 to_matrix(const Vec3E& v);
// Read back from a (numerically) trace-free matrix of the right form.
Vec3L vec_l(const Mat2& m);
Vec3E vec_e(const Mat2& m);

Mat2 to_matrix(Metric g, const Coords3& v);
Coords3 from_matrix(Metric g, const Mat2& m);

double ip_l3(const Vec3L& u, const Vec3L& v);
double ip_e3(const Vec3E& u, const Vec3E& v);
double ip(Metric g, const Coords3& u, const Coords3& v);

// <u x v, w> = det[u v w] in both metrics.
Vec3L cross(const Vec3L& u, const Vec3L& v);
Vec3E cross(const Vec3E& u, const Vec3E& v);
Coords3 cross(Metric g, const Coords3& u, const Coords3& v);

struct GroupElement2 {
  Mat2 m;
  RealForm form = RealForm::split;

  static GroupElement2 identity(RealForm f) { return {Mat2::identity(), f}; }
  // throws FormMismatch when the matrix is not in the group within tol
  void validate(double tol = 1e-8) const;
};

Vec3L ad(const GroupElement2& g, const Vec3L& v);
Vec3E ad(const GroupElement2& g, const Vec3E& v);
Coords3 ad(const GroupElement2& g, Metric metric, const Coords3& v);

// Lie-algebra isomorphism so(2,1) -> sl(2,R) (resp. so(3) -> su(2)):
// Omega is R^{-1} R' for an orthonormal frame path R, returned as the
// matrix X with Ad_{exp(tX)} generating the same rotation.
Mat2 lie_iso(Metric g, const Mat3& omega);

// frame path helpers
Mat3 mat3_mul(const Mat3& x, const Mat3& y);
Mat3 frame_inverse(Metric g, const Mat3& r);  // eta R^T eta, or R^T
Mat3 frame_from_columns(const Coords3& c0, const Coords3& c1, const Coords3& c2);
Coords3 column(const Mat3& r, int j);
Coords3 mat3_apply(const Mat3& r, const Coords3& v);
double orthonormality_defect(Metric g, const Mat3& r);
// Gram-Schmidt in the given metric; column 0 keeps its direction.
Mat3 gram_schmidt(Metric g, const Mat3& r);
// frame matrix of Ad_g acting on the model basis
Mat3 ad_frame(const GroupElement2& g);

struct FrameJet {
  Mat3 frame;
  Mat3 derivative;
};

struct LiftOptions {
  int steps_per_unit = 800;
  double tolerance = 1e-8;   // accepted as-is below this
  double correctable = 1e-6; // Gram-Schmidt corrected below this, rejected above
};

// F(t) with Ad_{F(t)} = Ad_{init} R(t0)^{-1} R(t); F(t0) = init. times sorted.
std::vector<GroupElement2> lift_frame_path(Metric g, const std::function<FrameJet(double)>& path,
                                           const std::vector<double>& times, double t0,
                                           const GroupElement2& init, const LiftOptions& opt = {});

}  // namespace gcauchy
