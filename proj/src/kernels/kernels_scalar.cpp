#include "gcauchy/kernels.hpp"

namespace gcauchy {

Mat2Batch Mat2Batch::filled(std::size_t n, const Mat2& m) {
  Mat2Batch out;
  out.a.assign(n, m.a);
  out.b.assign(n, m.b);
  out.c.assign(n, m.c);
  out.d.assign(n, m.d);
  return out;
}

namespace kernels {
namespace {

void mul(const Mat2Batch& x, const Mat2Batch& y, Mat2Batch& out) {
  const std::size_t n = x.size();
  out.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx xa = x.a[k], xb = x.b[k], xc = x.c[k], xd = x.d[k];
    const cplx ya = y.a[k], yb = y.b[k], yc = y.c[k], yd = y.d[k];
    out.a[k] = xa * ya + xb * yc;
    out.b[k] = xa * yb + xb * yd;
    out.c[k] = xc * ya + xd * yc;
    out.d[k] = xc * yb + xd * yd;
  }
}

void axpy(double s, const Mat2Batch& x, Mat2Batch& y) {
  const std::size_t n = x.size();
  for (std::size_t k = 0; k < n; ++k) {
    y.a[k] += s * x.a[k];
    y.b[k] += s * x.b[k];
    y.c[k] += s * x.c[k];
    y.d[k] += s * x.d[k];
  }
}

void lincomb(const Mat2Batch& x, double s, const Mat2Batch& y, Mat2Batch& out) {
  const std::size_t n = x.size();
  out.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.a[k] = x.a[k] + s * y.a[k];
    out.b[k] = x.b[k] + s * y.b[k];
    out.c[k] = x.c[k] + s * y.c[k];
    out.d[k] = x.d[k] + s * y.d[k];
  }
}

void adj(const Mat2Batch& x, Mat2Batch& out) {
  const std::size_t n = x.size();
  out.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx xa = x.a[k], xd = x.d[k];
    out.a[k] = xd;
    out.b[k] = -x.b[k];
    out.c[k] = -x.c[k];
    out.d[k] = xa;
  }
}

void det(const Mat2Batch& x, std::vector<cplx>& out) {
  const std::size_t n = x.size();
  out.resize(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = x.a[k] * x.d[k] - x.b[k] * x.c[k];
}

void eval3(const Mat2& m, const Mat2& z, const Mat2& p, const std::vector<cplx>& lam,
           Mat2Batch& out) {
  const std::size_t n = lam.size();
  out.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx l = lam[k];
    const cplx li = std::conj(l);  // |l| = 1
    out.a[k] = m.a * li + z.a + p.a * l;
    out.b[k] = m.b * li + z.b + p.b * l;
    out.c[k] = m.c * li + z.c + p.c * l;
    out.d[k] = m.d * li + z.d + p.d * l;
  }
}

}  // namespace

const Table& scalar() {
  static const Table t{"scalar", mul, axpy, lincomb, adj, det, eval3};
  return t;
}

}  // namespace kernels
}  // namespace gcauchy
