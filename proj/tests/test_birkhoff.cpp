#include <gtest/gtest.h>

#include "gcauchy/errors.hpp"
#include "gcauchy/loop.hpp"
#include "random_loops.hpp"

using namespace gcauchy;
using gcauchy::testing::loop_from;
using gcauchy::testing::max_sample_diff;

TEST(Birkhoff, IdentitySplitsTrivially) {
  const TwistedLoop I = TwistedLoop::constant(128, Mat2::identity(), RealForm::split);
  const BirkhoffFactors f = birkhoff_left(I);
  EXPECT_LT(max_sample_diff(f.minus, I), 1e-15);
  EXPECT_LT(max_sample_diff(f.plus, I), 1e-15);
  const BirkhoffFactors g = birkhoff_right(I);
  EXPECT_LT(max_sample_diff(g.minus, I), 1e-15);
  EXPECT_LT(max_sample_diff(g.plus, I), 1e-15);
}

TEST(Birkhoff, CylinderLoop) {
  for (double s : {0.3, -1.0, 2.0}) {
    const TwistedLoop phi = loop_from(128, RealForm::split, [&](cplx l) {
      return expm_tracefree(0.25 * (l + 1.0 / l) * s * basis::e0);
    });
    const BirkhoffFactors f = birkhoff_left(phi);
    const TwistedLoop hm = loop_from(128, RealForm::split, [&](cplx l) {
      return expm_tracefree(0.25 / l * s * basis::e0);
    });
    const TwistedLoop hp = loop_from(128, RealForm::split, [&](cplx l) {
      return expm_tracefree(0.25 * l * s * basis::e0);
    });
    EXPECT_LT(max_sample_diff(f.minus, hm), 1e-12);
    EXPECT_LT(max_sample_diff(f.plus, hp), 1e-12);
  }
}

TEST(Birkhoff, NullAxisLoop) {
  const double x = 0.3, y = 0.4;
  const TwistedLoop phi = loop_from(128, RealForm::split, [&](cplx l) {
    return Mat2{1.0, y / l, -x * l, 1.0 - x * y};
  });
  const BirkhoffFactors f = birkhoff_left(phi);
  const TwistedLoop hm = loop_from(128, RealForm::split, [&](cplx l) {
    return Mat2{1.0, y / (l * (1 - x * y)), 0.0, 1.0};
  });
  EXPECT_LT(max_sample_diff(f.minus, hm), 1e-13);
}

TEST(Birkhoff, RightFactorOfPlusLoopIsTrivial) {
  const TwistedLoop phi = loop_from(128, RealForm::split, [](cplx l) {
    return Mat2{1.0, 0.5 * l, 0.0, 1.0} * Mat2{1.0, 0.0, -0.7 * l, 1.0};
  });
  const BirkhoffFactors f = birkhoff_right(phi);
  EXPECT_LT(max_sample_diff(f.plus, phi), 1e-13);
  EXPECT_LT(max_sample_diff(f.minus, TwistedLoop::constant(128, Mat2::identity(), RealForm::split)),
            1e-13);
}

TEST(Birkhoff, RandomSplitLoopsRecoverKnownFactors) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto k = gcauchy::testing::random_split_splitting(rng);
    const BirkhoffFactors f = birkhoff_left(k.phi);
    EXPECT_LT(max_sample_diff(f.minus, k.minus), 1e-10);
    EXPECT_LT(max_sample_diff(f.plus, k.plus), 1e-10);
    EXPECT_LT(f.residual, 1e-12);
    const auto dm = loop_defects(f.minus), dp = loop_defects(f.plus);
    EXPECT_LT(dm.parity, 1e-10);
    EXPECT_LT(dp.parity, 1e-10);
    EXPECT_LT(dm.real_form, 1e-10);
    EXPECT_LT(dp.real_form, 1e-10);
    // right splitting reconstructs as well
    const BirkhoffFactors r = birkhoff_right(k.phi);
    EXPECT_LT(max_sample_diff(loop_mul(r.plus, r.minus), k.phi), 1e-10);
    EXPECT_LT(norm(loop_eval(r.plus, 0.0) - Mat2::identity()), 1e-10);
  }
}

TEST(Birkhoff, RandomUnitaryLoops) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const TwistedLoop phi = gcauchy::testing::random_unitary_loop(rng);
    const BirkhoffFactors f = birkhoff_left(phi);
    EXPECT_LT(max_sample_diff(loop_mul(f.minus, f.plus), phi), 1e-10);
    EXPECT_LT(loop_defects(f.minus).real_form, 1e-10);
    EXPECT_LT(loop_defects(f.plus).real_form, 1e-10);
    EXPECT_LT(loop_defects(f.minus).parity, 1e-10);
    EXPECT_LT(loop_defects(f.plus).parity, 1e-10);
    // minus factor is I at infinity, plus factor has no negative modes
    const auto& cm = f.minus.coefficients();
    const auto& cp = f.plus.coefficients();
    EXPECT_LT(norm(cm[0] - Mat2::identity()), 1e-10);
    for (int j = 1; j < 64; ++j) {
      EXPECT_LT(norm(cm[j]), 1e-10);
      EXPECT_LT(norm(cp[-j]), 1e-10);
    }
    const BirkhoffFactors g = birkhoff_left(loop_mul(f.minus, f.plus));
    EXPECT_LT(max_sample_diff(g.minus, f.minus), 1e-10);
    EXPECT_LT(max_sample_diff(g.plus, f.plus), 1e-10);
  }
}

TEST(Birkhoff, LeavingTheBigCellIsReported) {
  // Phi = [[0, l^-1],[-l, 0]] has partial indices (1,-1)
  const TwistedLoop phi = loop_from(128, RealForm::split, [](cplx l) {
    return Mat2{0.0, 1.0 / l, -l, 0.0};
  });
  const BirkhoffOutcome o = try_birkhoff_left(phi);
  EXPECT_NE(o.status, BirkhoffStatus::ok);
  EXPECT_THROW(birkhoff_left(phi), BigCellFailure);
}

TEST(Birkhoff, SlowlyDecayingFactorsWidenTheSection) {
  // tails near 1e-11 at N = 16: below the widening threshold, above rounding
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    const TwistedLoop phi = gcauchy::testing::random_unitary_loop(rng);
    const BirkhoffFactors f = birkhoff_left(phi);
    EXPECT_LT(max_sample_diff(loop_mul(f.minus, f.plus), phi), 1e-13);
  }
}

TEST(Birkhoff, RefactoringNearTheCellEdge) {
  // draw 785 of this stream has a section condition number near 3e5
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 785; ++i) gcauchy::testing::random_split_splitting(rng);
  const auto k = gcauchy::testing::random_split_splitting(rng);
  const BirkhoffFactors f = birkhoff_left(k.phi);
  EXPECT_GT(f.condition, 1e5);
  EXPECT_LT(max_sample_diff(loop_mul(f.minus, f.plus), k.phi), 1e-13);
  const BirkhoffFactors g = birkhoff_left(loop_mul(f.minus, f.plus));
  EXPECT_LT(max_sample_diff(g.minus, f.minus), 1e-11);
  EXPECT_LT(max_sample_diff(g.plus, f.plus), 1e-11);
}
