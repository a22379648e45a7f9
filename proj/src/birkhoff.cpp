// Left Birkhoff splitting by the finite-section Toeplitz system for
// K = H_-^{-1} = I + sum_{i=1..N} k_{-i} lambda^{-i}:  (K Phi)_m = 0 for m = -1..-N.

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "gcauchy/errors.hpp"
#include "gcauchy/loop.hpp"

namespace gcauchy {

const char* to_string(BirkhoffStatus s) {
  switch (s) {
    case BirkhoffStatus::ok: return "ok";
    case BirkhoffStatus::singular: return "singular";
    case BirkhoffStatus::ill_conditioned: return "ill-conditioned";
    case BirkhoffStatus::residual: return "residual";
  }
  return "?";
}

namespace {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Divide every sample by sqrt(det); det stays near 1 so the principal
// branch is continuous around the circle.
void normalize_det(Mat2Batch& s) {
  std::vector<cplx> det;
  kernels::active().det(s, det);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const cplx r = 1.0 / std::sqrt(det[k]);
    s.a[k] *= r;
    s.b[k] *= r;
    s.c[k] *= r;
    s.d[k] *= r;
  }
}

// keep coefficients j in [lo, hi] only
TwistedLoop project(const TwistedLoop& L, int lo, int hi) {
  const auto& c = L.coefficients();
  const int M = L.size();
  LaurentSeries p(M);
  for (int j = std::max(lo, -M / 2 + 1); j <= std::min(hi, M / 2 - 1); ++j) p[j] = c[j];
  return TwistedLoop::from_coefficients(p, L.form(), L.twisted());
}

// Toeplitz rows m = -1..-P of (K Phi)_m = 0, columns k_1..k_N; block (p, i) = phi_{i-p}^T
void toeplitz_system(const LaurentSeries& f, int N, int P, CMat& A, CMat& B) {
  A.resize(2 * P, 2 * N);
  B.resize(2 * P, 2);
  for (int p = 1; p <= P; ++p) {
    for (int i = 1; i <= N; ++i) {
      const Mat2& blk = f[i - p];
      const int r = 2 * (p - 1), c = 2 * (i - 1);
      A(r, c) = blk.a;
      A(r, c + 1) = blk.c;
      A(r + 1, c) = blk.b;
      A(r + 1, c + 1) = blk.d;
    }
    const Mat2& m = f[-p];
    // column r holds -row r of phi_{-p}
    B(2 * (p - 1), 0) = -m.a;
    B(2 * (p - 1) + 1, 0) = -m.b;
    B(2 * (p - 1), 1) = -m.c;
    B(2 * (p - 1) + 1, 1) = -m.d;
  }
}

struct Split {
  TwistedLoop minus, plus;
  double residual = 0;
};

// H_- = K^{-1}, H_+ = nonnegative part of K Phi, both with det 1
Split split_from(const TwistedLoop& phi, const CMat& X, int N) {
  const int M = phi.size();
  std::vector<Mat2> k(N + 1);
  k[0] = Mat2::identity();
  for (int i = 1; i <= N; ++i) {
    const int c = 2 * (i - 1);
    k[i] = Mat2{X(c, 0), X(c + 1, 0), X(c, 1), X(c + 1, 1)};
  }

  // K on the circle: lambda_k^{-i} = lambda_{(-ik) mod M}
  const auto& lam = circle_nodes(M);
  Mat2Batch K(M);
  for (int s = 0; s < M; ++s) {
    Mat2 acc = k[0];
    for (int i = 1; i <= N; ++i) acc += k[i] * lam[((M - (i * s) % M) % M)];
    K.set(s, acc);
  }
  const auto& ker = kernels::active();

  Mat2Batch minus;
  ker.adj(K, minus);
  normalize_det(minus);

  Mat2Batch kphi;
  ker.mul(K, phi.samples(), kphi);
  TwistedLoop plus = project(TwistedLoop(std::move(kphi), phi.form(), phi.twisted()), 0, M / 2);
  Mat2Batch plus_s = plus.samples();
  normalize_det(plus_s);

  Split out{TwistedLoop(std::move(minus), phi.form(), phi.twisted()),
            TwistedLoop(std::move(plus_s), phi.form(), phi.twisted())};
  Mat2Batch prod;
  ker.mul(out.minus.samples(), out.plus.samples(), prod);
  double res = 0, scale = 1;
  for (int s = 0; s < M; ++s) {
    res = std::max(res, norm(prod.get(s) - phi.sample(s)));
    scale = std::max(scale, norm(phi.sample(s)));
  }
  out.residual = res / scale;
  return out;
}

BirkhoffOutcome factor_once(const TwistedLoop& phi, const BirkhoffOptions& opt, int N) {
  BirkhoffOutcome out;
  const auto& f = phi.coefficients();

  CMat A, B;
  toeplitz_system(f, N, N, A, B);
  Eigen::PartialPivLU<CMat> lu(A);
  const CMat Ainv = lu.inverse();
  const double anorm = A.cwiseAbs().colwise().sum().maxCoeff();
  const double inorm = Ainv.cwiseAbs().colwise().sum().maxCoeff();
  out.condition = anorm * inorm;
  if (!std::isfinite(out.condition)) {
    out.status = BirkhoffStatus::singular;
    out.condition = std::numeric_limits<double>::infinity();
    return out;
  }
  if (out.condition > opt.condition_limit) {
    out.status = BirkhoffStatus::ill_conditioned;
    return out;
  }
  CMat X = lu.solve(B);
  X += lu.solve(B - A * X);  // one refinement step
  Split sp = split_from(phi, X, N);

  // The square section leaves (K Phi)_m for m < -N free; near the edge of
  // the big cell the noise there is cond * eps. Asking for m down to -2N in
  // the least-squares sense brings the splitting back to rounding level.
  if (sp.residual > opt.refine_above) {
    CMat A2, B2;
    toeplitz_system(f, N, 2 * N, A2, B2);
    const Eigen::HouseholderQR<CMat> qr(A2);
    CMat X2 = qr.solve(B2);
    X2 += qr.solve(B2 - A2 * X2);
    Split sq = split_from(phi, X2, N);
    if (sq.residual < sp.residual) sp = std::move(sq);
  }

  out.residual = sp.residual;
  if (!(out.residual <= opt.residual_limit)) {
    out.status = BirkhoffStatus::residual;
    return out;
  }
  out.factors = BirkhoffFactors{std::move(sp.minus), std::move(sp.plus), out.residual, out.condition, N};
  return out;
}

}  // namespace

BirkhoffOutcome try_birkhoff_left(const TwistedLoop& phi, const BirkhoffOptions& opt) {
  int N = opt.truncation;
  const int M = phi.size();
  if (4 * N + 2 > M) throw std::invalid_argument("birkhoff: need M >= 4N + 2");
  const int wider = std::min(2 * N, (M - 2) / 4);
  if (phi.coefficients().tail(N) > opt.tail_threshold && wider > N) return factor_once(phi, opt, wider);
  BirkhoffOutcome o = factor_once(phi, opt, N);
  // slowly decaying factors: one retry with the wider section
  if (wider > N && o.status != BirkhoffStatus::singular && o.residual > opt.refine_above) {
    BirkhoffOutcome w = factor_once(phi, opt, wider);
    if (w.status == BirkhoffStatus::ok && (o.status != BirkhoffStatus::ok || w.residual < o.residual)) return w;
  }
  return o;
}

BirkhoffFactors birkhoff_left(const TwistedLoop& phi, const BirkhoffOptions& opt) {
  BirkhoffOutcome o = try_birkhoff_left(phi, opt);
  if (o.status != BirkhoffStatus::ok)
    throw BigCellFailure(std::string("birkhoff_left: ") + to_string(o.status) +
                         " (condition " + std::to_string(o.condition) + ", residual " +
                         std::to_string(o.residual) + ")");
  return std::move(o.factors);
}

// Phi(lambda) = H_+ H_-  <=>  Phi(1/lambda) = [H_+(1/lambda)] [H_-(1/lambda)],
// a left splitting of the reflected loop.
BirkhoffOutcome try_birkhoff_right(const TwistedLoop& phi, const BirkhoffOptions& opt) {
  BirkhoffOutcome o = try_birkhoff_left(loop_reflect(phi), opt);
  if (o.status == BirkhoffStatus::ok) {
    TwistedLoop plus = loop_reflect(o.factors.minus);
    TwistedLoop minus = loop_reflect(o.factors.plus);
    o.factors.minus = std::move(minus);
    o.factors.plus = std::move(plus);
  }
  return o;
}

BirkhoffFactors birkhoff_right(const TwistedLoop& phi, const BirkhoffOptions& opt) {
  BirkhoffOutcome o = try_birkhoff_right(phi, opt);
  if (o.status != BirkhoffStatus::ok)
    throw BigCellFailure(std::string("birkhoff_right: ") + to_string(o.status));
  return std::move(o.factors);
}

}  // namespace gcauchy
