// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "gcauchy/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace gcauchy::kernels {
namespace {

// two interleaved complex doubles per register
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d x, __m256d y) {
  const __m256d yr = _mm256_movedup_pd(y);
  const __m256d yi = _mm256_permute_pd(y, 0xF);
  const __m256d xs = _mm256_permute_pd(x, 0x5);
  return _mm256_fmaddsub_pd(x, yr, _mm256_mul_pd(xs, yi));
}

inline __m256d bcast(cplx z) { return _mm256_setr_pd(z.real(), z.imag(), z.real(), z.imag()); }

void mul(const Mat2Batch& x, const Mat2Batch& y, Mat2Batch& out) {
  const std::size_t n = x.size();
  out.resize(n);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xa = load2(&x.a[k]), xb = load2(&x.b[k]), xc = load2(&x.c[k]), xd = load2(&x.d[k]);
    const __m256d ya = load2(&y.a[k]), yb = load2(&y.b[k]), yc = load2(&y.c[k]), yd = load2(&y.d[k]);
    store2(&out.a[k], _mm256_add_pd(cmul(xa, ya), cmul(xb, yc)));
    store2(&out.b[k], _mm256_add_pd(cmul(xa, yb), cmul(xb, yd)));
    store2(&out.c[k], _mm256_add_pd(cmul(xc, ya), cmul(xd, yc)));
    store2(&out.d[k], _mm256_add_pd(cmul(xc, yb), cmul(xd, yd)));
  }
  for (; k < n; ++k) {
    const Mat2 r = x.get(k) * y.get(k);
    out.set(k, r);
  }
}

inline void axpy_arr(double s, const cplx* x, cplx* y, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  const std::size_t m = 2 * n;
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4)
    _mm256_storeu_pd(ys + k, _mm256_fmadd_pd(vs, _mm256_loadu_pd(xs + k), _mm256_loadu_pd(ys + k)));
  for (; k < m; ++k) ys[k] += s * xs[k];
}

void axpy(double s, const Mat2Batch& x, Mat2Batch& y) {
  const std::size_t n = x.size();
  axpy_arr(s, x.a.data(), y.a.data(), n);
  axpy_arr(s, x.b.data(), y.b.data(), n);
  axpy_arr(s, x.c.data(), y.c.data(), n);
  axpy_arr(s, x.d.data(), y.d.data(), n);
}

inline void lincomb_arr(const cplx* x, double s, const cplx* y, cplx* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  const double* xs = reinterpret_cast<const double*>(x);
  const double* ys = reinterpret_cast<const double*>(y);
  double* os = reinterpret_cast<double*>(out);
  const std::size_t m = 2 * n;
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4)
    _mm256_storeu_pd(os + k, _mm256_fmadd_pd(vs, _mm256_loadu_pd(ys + k), _mm256_loadu_pd(xs + k)));
  for (; k < m; ++k) os[k] = xs[k] + s * ys[k];
}

void lincomb(const Mat2Batch& x, double s, const Mat2Batch& y, Mat2Batch& out) {
  const std::size_t n = x.size();
  out.resize(n);
  lincomb_arr(x.a.data(), s, y.a.data(), out.a.data(), n);
  lincomb_arr(x.b.data(), s, y.b.data(), out.b.data(), n);
  lincomb_arr(x.c.data(), s, y.c.data(), out.c.data(), n);
  lincomb_arr(x.d.data(), s, y.d.data(), out.d.data(), n);
}

void adj(const Mat2Batch& x, Mat2Batch& out) {
  const std::size_t n = x.size();
  out.resize(n);
  const __m256d neg = _mm256_set1_pd(-0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xa = load2(&x.a[k]);
    store2(&out.a[k], load2(&x.d[k]));
    store2(&out.b[k], _mm256_xor_pd(load2(&x.b[k]), neg));
    store2(&out.c[k], _mm256_xor_pd(load2(&x.c[k]), neg));
    store2(&out.d[k], xa);
  }
  for (; k < n; ++k) out.set(k, x.get(k).adj());
}

void det(const Mat2Batch& x, std::vector<cplx>& out) {
  const std::size_t n = x.size();
  out.resize(n);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d ad = cmul(load2(&x.a[k]), load2(&x.d[k]));
    const __m256d bc = cmul(load2(&x.b[k]), load2(&x.c[k]));
    store2(&out[k], _mm256_sub_pd(ad, bc));
  }
  for (; k < n; ++k) out[k] = x.a[k] * x.d[k] - x.b[k] * x.c[k];
}

void eval3(const Mat2& m, const Mat2& z, const Mat2& p, const std::vector<cplx>& lam,
           Mat2Batch& out) {
  const std::size_t n = lam.size();
  out.resize(n);
  const __m256d conjmask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  const __m256d ma = bcast(m.a), mb = bcast(m.b), mc = bcast(m.c), md = bcast(m.d);
  const __m256d za = bcast(z.a), zb = bcast(z.b), zc = bcast(z.c), zd = bcast(z.d);
  const __m256d pa = bcast(p.a), pb = bcast(p.b), pc = bcast(p.c), pd = bcast(p.d);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d l = load2(&lam[k]);
    const __m256d li = _mm256_xor_pd(l, conjmask);
    store2(&out.a[k], _mm256_add_pd(_mm256_add_pd(cmul(ma, li), za), cmul(pa, l)));
    store2(&out.b[k], _mm256_add_pd(_mm256_add_pd(cmul(mb, li), zb), cmul(pb, l)));
    store2(&out.c[k], _mm256_add_pd(_mm256_add_pd(cmul(mc, li), zc), cmul(pc, l)));
    store2(&out.d[k], _mm256_add_pd(_mm256_add_pd(cmul(md, li), zd), cmul(pd, l)));
  }
  for (; k < n; ++k) {
    const cplx l = lam[k], li = std::conj(l);
    out.set(k, m * li + z + p * l);
  }
}

}  // namespace

const Table* avx2_table() {
  static const Table t{"avx2", mul, axpy, lincomb, adj, det, eval3};
  return &t;
}

}  // namespace gcauchy::kernels

#else

namespace gcauchy::kernels {
const Table* avx2_table() { return nullptr; }
}  // namespace gcauchy::kernels

#endif
