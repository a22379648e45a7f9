#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <sstream>

#include "gcauchy/loop.hpp"

using namespace gcauchy;

namespace {

constexpr int M = 128;

// twisted polynomial loop with random coefficients for |j| <= n
LaurentSeries random_series(int n, std::mt19937_64& rng, bool real) {
  std::normal_distribution<double> g;
  auto z = [&] { return real ? cplx(g(rng), 0) : cplx(g(rng), g(rng)); };
  LaurentSeries c(M);
  for (int j = -n; j <= n; ++j) {
    const double s = std::pow(0.5, std::abs(j));
    if (j % 2 == 0)
      c[j] = Mat2{s * z(), 0.0, 0.0, s * z()};
    else
      c[j] = Mat2{0.0, s * z(), s * z(), 0.0};
  }
  return c;
}

}  // namespace

TEST(Loop, ConstantLoopEvaluatesEverywhere) {
  const TwistedLoop L = TwistedLoop::constant(M, Mat2::identity(), RealForm::split);
  for (cplx lam : {cplx(1, 0), cplx(0.3, 0.2), cplx(2, 0), cplx(0, -1)})
    EXPECT_LT(norm(loop_eval(L, lam) - Mat2::identity()), 1e-14);
}

TEST(Loop, MonomialOffTheCircle) {
  LaurentSeries c(M);
  c[1] = basis::e0;
  const TwistedLoop L = TwistedLoop::from_coefficients(c, RealForm::split);
  EXPECT_LT(norm(loop_eval(L, 2.0) - 2.0 * basis::e0), 1e-13);
}

TEST(Loop, EvaluationAtNodesMatchesSamples) {
  std::mt19937_64 rng(1);
  const TwistedLoop L = TwistedLoop::from_coefficients(random_series(10, rng, false), RealForm::unitary);
  const auto& lam = circle_nodes(M);
  for (int k = 0; k < M; ++k) EXPECT_LT(norm(loop_eval(L, lam[k]) - L.sample(k)), 1e-12);
}

TEST(Loop, TransformRoundTrip) {
  std::mt19937_64 rng(2);
  const LaurentSeries c = random_series(M / 4, rng, false);
  const TwistedLoop L = TwistedLoop::from_coefficients(c, RealForm::unitary);
  const TwistedLoop L2(L.samples(), RealForm::unitary);
  for (int j = -M / 2 + 1; j < M / 2; ++j) EXPECT_LT(norm(L2.coefficients()[j] - c[j]), 1e-12);
}

TEST(Loop, ProductInverseAndConvolution) {
  std::mt19937_64 rng(3);
  const LaurentSeries ca = random_series(4, rng, true), cb = random_series(4, rng, true);
  const TwistedLoop A = TwistedLoop::from_coefficients(ca, RealForm::split);
  const TwistedLoop B = TwistedLoop::from_coefficients(cb, RealForm::split);
  const TwistedLoop P = loop_mul(A, B);
  EXPECT_EQ(P.form(), RealForm::split);
  EXPECT_LT(loop_defects(P).real_form, 1e-14);
  EXPECT_LT(loop_defects(P).parity, 1e-14);
  for (int j = -8; j <= 8; ++j) {
    Mat2 conv = Mat2::zero();
    for (int i = -4; i <= 4; ++i)
      if (std::abs(j - i) <= 4) conv += ca[i] * cb[j - i];
    EXPECT_LT(norm(P.coefficients()[j] - conv), 1e-12);
  }
  // keep A away from singular samples for the inverse
  LaurentSeries cs = ca;
  cs[0] = cs[0] + Mat2::identity() * 10.0;
  const TwistedLoop S = TwistedLoop::from_coefficients(cs, RealForm::split);
  const TwistedLoop I = loop_mul(S, loop_inv(S));
  for (int k = 0; k < M; ++k) EXPECT_LT(norm(I.sample(k) - Mat2::identity()), 1e-12);
}

TEST(Loop, LambdaLogDerivative) {
  const TwistedLoop C = TwistedLoop::constant(M, Mat2{2.0, 0.0, 0.0, 0.5}, RealForm::split);
  const TwistedLoop Z = lambda_log_derivative(C);
  for (int k = 0; k < M; ++k) EXPECT_LT(norm(Z.sample(k)), 1e-14);

  // L = exp(tau lambda e0): (lambda d L) L^{-1} = tau lambda e0
  const double tau = 0.7;
  const auto& lam = circle_nodes(M);
  Mat2Batch s(M);
  for (int k = 0; k < M; ++k) s.set(k, expm_tracefree(tau * lam[k] * basis::e0));
  const TwistedLoop L(s, RealForm::split);
  const TwistedLoop D = lambda_log_derivative(L);
  for (int k = 0; k < M; ++k) EXPECT_LT(norm(D.sample(k) - tau * lam[k] * basis::e0), 1e-12);
}

TEST(Loop, LambdaDerivativeAgainstFiniteDifferences) {
  std::mt19937_64 rng(4);
  const TwistedLoop L = TwistedLoop::from_coefficients(random_series(6, rng, false), RealForm::unitary);
  // lambda d/dlambda = -i d/dtheta on the circle
  const double h = 1e-5;
  for (double th : {0.1, 1.3, 2.9, 5.0}) {
    const Mat2 fd = (loop_eval(L, std::polar(1.0, th + h)) - loop_eval(L, std::polar(1.0, th - h))) *
                    cplx(0, -1.0 / (2 * h));
    EXPECT_LT(norm(fd - loop_eval_lambda_derivative(L, std::polar(1.0, th))), 1e-8);
  }
}

TEST(Loop, EndpointEvaluation) {
  LaurentSeries c(M);
  c[0] = Mat2::identity();
  c[1] = basis::e1;
  const TwistedLoop P = TwistedLoop::from_coefficients(c, RealForm::split);
  EXPECT_LT(norm(loop_eval(P, 0.0) - Mat2::identity()), 1e-14);
  EXPECT_THROW(loop_eval(P, cplx(INFINITY, 0)), std::domain_error);
}

TEST(Loop, CsvDump) {
  const TwistedLoop L = TwistedLoop::constant(8, Mat2::identity(), RealForm::split);
  std::ostringstream os;
  dump_loop_csv(os, L);
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "j,re_a,im_a,re_b,im_b,re_c,im_c,re_d,im_d");
  EXPECT_NE(s.find("\n0,1,0,0,0,0,0,1,0\n"), std::string::npos);
}
