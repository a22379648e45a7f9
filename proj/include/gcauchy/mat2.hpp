#pragma once

#include <cmath>
#include <complex>

namespace gcauchy {

using cplx = std::complex<double>;

// 2x2 complex matrix [[a, b], [c, d]].
struct Mat2 {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static Mat2 identity() { return {}; }
  static Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
  static Mat2 diag(cplx p, cplx q) { return {p, 0.0, 0.0, q}; }

  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  Mat2 adj() const { return {d, -b, -c, a}; }
  Mat2 inverse() const {
    const cplx k = 1.0 / det();
    return {d * k, -b * k, -c * k, a * k};
  }
  Mat2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
  Mat2 transpose() const { return {a, c, b, d}; }
  Mat2 conj() const { return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)}; }

  Mat2& operator+=(const Mat2& o) { a += o.a; b += o.b; c += o.c; d += o.d; return *this; }
  Mat2& operator-=(const Mat2& o) { a -= o.a; b -= o.b; c -= o.c; d -= o.d; return *this; }
  Mat2& operator*=(cplx s) { a *= s; b *= s; c *= s; d *= s; return *this; }
};

inline Mat2 operator+(Mat2 x, const Mat2& y) { return x += y; }
inline Mat2 operator-(Mat2 x, const Mat2& y) { return x -= y; }
inline Mat2 operator-(const Mat2& x) { return {-x.a, -x.b, -x.c, -x.d}; }
inline Mat2 operator*(Mat2 x, cplx s) { return x *= s; }
inline Mat2 operator*(cplx s, Mat2 x) { return x *= s; }
inline Mat2 operator*(Mat2 x, double s) { return x *= cplx(s); }
inline Mat2 operator*(double s, Mat2 x) { return x *= cplx(s); }

inline Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

// Frobenius norm
inline double norm(const Mat2& m) {
  return std::sqrt(std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d));
}

inline double max_abs_entry(const Mat2& m) {
  return std::max(std::max(std::abs(m.a), std::abs(m.b)), std::max(std::abs(m.c), std::abs(m.d)));
}

inline double max_imag(const Mat2& m) {
  return std::max(std::max(std::abs(m.a.imag()), std::abs(m.b.imag())),
                  std::max(std::abs(m.c.imag()), std::abs(m.d.imag())));
}

// exp of a trace-free matrix: A^2 = -det(A) I.
inline Mat2 expm_tracefree(const Mat2& A) {
  const cplx s = std::sqrt(-A.det());
  cplx ch, sh_over_s;
  if (std::abs(s) < 1e-4) {
    const cplx s2 = s * s;
    ch = 1.0 + s2 / 2.0 + s2 * s2 / 24.0 + s2 * s2 * s2 / 720.0;
    sh_over_s = 1.0 + s2 / 6.0 + s2 * s2 / 120.0 + s2 * s2 * s2 / 5040.0;
  } else {
    ch = std::cosh(s);
    sh_over_s = std::sinh(s) / s;
  }
  return Mat2::diag(ch, ch) + sh_over_s * A;
}

}  // namespace gcauchy
