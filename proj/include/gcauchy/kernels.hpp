#pragma once

// Batched 2x2 complex matrix kernels over the circle samples.
// Layout is structure-of-arrays: one contiguous array per entry, so a
// 256-bit register holds the same entry for two neighbouring samples.

#include <cstddef>
#include <string_view>
#include <vector>

#include "gcauchy/mat2.hpp"

namespace gcauchy {

struct Mat2Batch {
  std::vector<cplx> a, b, c, d;

  Mat2Batch() = default;
  explicit Mat2Batch(std::size_t n) : a(n), b(n), c(n), d(n) {}
  static Mat2Batch filled(std::size_t n, const Mat2& m);

  std::size_t size() const { return a.size(); }
  void resize(std::size_t n) { a.resize(n); b.resize(n); c.resize(n); d.resize(n); }
  Mat2 get(std::size_t k) const { return {a[k], b[k], c[k], d[k]}; }
  void set(std::size_t k, const Mat2& m) { a[k] = m.a; b[k] = m.b; c[k] = m.c; d[k] = m.d; }
};

namespace kernels {

struct Table {
  const char* name;
  // out = x * y (out may alias neither input)
  void (*mul)(const Mat2Batch& x, const Mat2Batch& y, Mat2Batch& out);
  // y += s * x
  void (*axpy)(double s, const Mat2Batch& x, Mat2Batch& y);
  // out = x + s * y
  void (*lincomb)(const Mat2Batch& x, double s, const Mat2Batch& y, Mat2Batch& out);
  // out = adjugate(x); equals the inverse when det = 1
  void (*adj)(const Mat2Batch& x, Mat2Batch& out);
  // det per sample
  void (*det)(const Mat2Batch& x, std::vector<cplx>& out);
  // out_k = m * lam_k^{-1} + z + p * lam_k with lam_k on the unit circle
  void (*eval3)(const Mat2& m, const Mat2& z, const Mat2& p,
                const std::vector<cplx>& lam, Mat2Batch& out);
};

const Table& scalar();
// nullptr when not compiled in or the CPU lacks AVX2+FMA
const Table* avx2();
// Picked once: GCAUCHY_KERNELS=scalar|avx2 overrides auto-detection.
const Table& active();

}  // namespace kernels
}  // namespace gcauchy
