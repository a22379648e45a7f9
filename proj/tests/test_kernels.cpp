#include <gtest/gtest.h>

#include <random>

#include "gcauchy/kernels.hpp"
#include "gcauchy/loop.hpp"

using namespace gcauchy;

namespace {

Mat2Batch random_batch(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat2Batch b(n);
  for (std::size_t k = 0; k < n; ++k)
    b.set(k, Mat2{cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng)),
                  cplx(g(rng), g(rng))});
  return b;
}

double diff(const Mat2Batch& x, const Mat2Batch& y) {
  double m = 0;
  for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, norm(x.get(k) - y.get(k)));
  return m;
}

class KernelEquivalence : public ::testing::TestWithParam<int> {};

}  // namespace

TEST_P(KernelEquivalence, Avx2MatchesScalar) {
  const kernels::Table* simd = kernels::avx2();
  if (!simd) GTEST_SKIP() << "no AVX2 on this machine";
  const kernels::Table& ref = kernels::scalar();
  const std::size_t n = GetParam();
  std::mt19937_64 rng(17 + n);
  const Mat2Batch x = random_batch(n, rng), y = random_batch(n, rng);

  Mat2Batch r1, r2;
  ref.mul(x, y, r1);
  simd->mul(x, y, r2);
  EXPECT_LT(diff(r1, r2), 1e-14);

  ref.lincomb(x, 0.37, y, r1);
  simd->lincomb(x, 0.37, y, r2);
  EXPECT_LT(diff(r1, r2), 1e-14);

  r1 = y;
  r2 = y;
  ref.axpy(-1.25, x, r1);
  simd->axpy(-1.25, x, r2);
  EXPECT_LT(diff(r1, r2), 1e-14);

  ref.adj(x, r1);
  simd->adj(x, r2);
  EXPECT_EQ(diff(r1, r2), 0.0);

  std::vector<cplx> d1, d2;
  ref.det(x, d1);
  simd->det(x, d2);
  for (std::size_t k = 0; k < n; ++k) EXPECT_LT(std::abs(d1[k] - d2[k]), 1e-14);

  std::vector<cplx> lam(n);
  for (std::size_t k = 0; k < n; ++k) lam[k] = std::polar(1.0, 0.1 + 0.7 * k);
  const Mat2 m = x.get(0), z = y.get(0), p = x.get(n - 1);
  ref.eval3(m, z, p, lam, r1);
  simd->eval3(m, z, p, lam, r2);
  EXPECT_LT(diff(r1, r2), 1e-14);
}

INSTANTIATE_TEST_SUITE_P(Sizes, KernelEquivalence, ::testing::Values(1, 2, 7, 64, 128, 129));

TEST(Kernels, ActiveTableIsOneOfTheVariants) {
  const auto& a = kernels::active();
  EXPECT_TRUE(&a == &kernels::scalar() || &a == kernels::avx2());
}

TEST(Kernels, MulMatchesMat2Product) {
  std::mt19937_64 rng(3);
  const Mat2Batch x = random_batch(5, rng), y = random_batch(5, rng);
  Mat2Batch r;
  kernels::scalar().mul(x, y, r);
  for (int k = 0; k < 5; ++k) EXPECT_LT(norm(r.get(k) - x.get(k) * y.get(k)), 1e-15);
}
