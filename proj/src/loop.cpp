#include "gcauchy/loop.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "gcauchy/errors.hpp"

namespace gcauchy {

double LaurentSeries::max_norm() const {
  double m = 0;
  for (const auto& x : c_) m = std::max(m, norm(x));
  return m;
}

double LaurentSeries::tail(int n) const {
  const double top = max_norm();
  if (top == 0) return 0;
  double t = 0;
  const int M = samples();
  for (int j = n; j <= M / 2; ++j) t = std::max(t, std::max(norm((*this)[j]), norm((*this)[-j])));
  return t / top;
}

const std::vector<cplx>& circle_nodes(int M) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<std::vector<cplx>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[M];
  if (!slot) {
    slot = std::make_unique<std::vector<cplx>>(M);
    for (int k = 0; k < M; ++k) {
      // exact values at the quarter points keep symmetric samples symmetric
      const double th = 2.0 * std::numbers::pi * k / M;
      double re = std::cos(th), im = std::sin(th);
      if (4 * k == M) re = 0, im = 1;
      if (2 * k == M) re = -1, im = 0;
      if (4 * k == 3 * M) re = 0, im = -1;
      (*slot)[k] = cplx(re, im);
    }
  }
  return *slot;
}

namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

const Plans& plans_for(int M) {
  // the FFTW planner is not thread-safe; execution with new arrays is
  static std::mutex mu;
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  std::vector<cplx> tmp_in(M), tmp_out(M);
  auto* in = reinterpret_cast<fftw_complex*>(tmp_in.data());
  auto* out = reinterpret_cast<fftw_complex*>(tmp_out.data());
  Plans p;
  p.forward = fftw_plan_dft_1d(M, in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.backward = fftw_plan_dft_1d(M, in, out, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(M, p).first->second;
}

}  // namespace

void samples_to_coeffs(const std::vector<cplx>& s, std::vector<cplx>& c) {
  const int M = static_cast<int>(s.size());
  c.resize(M);
  fftw_execute_dft(plans_for(M).forward,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(s.data())),
                   reinterpret_cast<fftw_complex*>(c.data()));
  const double inv = 1.0 / M;
  for (auto& x : c) x *= inv;
}

void coeffs_to_samples(const std::vector<cplx>& c, std::vector<cplx>& s) {
  const int M = static_cast<int>(c.size());
  s.resize(M);
  fftw_execute_dft(plans_for(M).backward,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(c.data())),
                   reinterpret_cast<fftw_complex*>(s.data()));
}

TwistedLoop::TwistedLoop(Mat2Batch samples, RealForm form, bool twisted)
    : s_(std::move(samples)), form_(form), twisted_(twisted), cache_(std::make_shared<Cache>()) {}

TwistedLoop TwistedLoop::constant(int M, const Mat2& m, RealForm form) {
  return TwistedLoop(Mat2Batch::filled(M, m), form, true);
}

TwistedLoop TwistedLoop::from_coefficients(const LaurentSeries& c, RealForm form, bool twisted) {
  const int M = c.samples();
  Mat2Batch s(M);
  std::vector<cplx> col(M), out;
  auto entry = [&](cplx Mat2::*field, std::vector<cplx>& dst) {
    for (int k = 0; k < M; ++k) col[k] = c[k].*field;
    coeffs_to_samples(col, out);
    dst = out;
  };
  entry(&Mat2::a, s.a);
  entry(&Mat2::b, s.b);
  entry(&Mat2::c, s.c);
  entry(&Mat2::d, s.d);
  return TwistedLoop(std::move(s), form, twisted);
}

const LaurentSeries& TwistedLoop::coefficients() const {
  if (!cache_) throw std::logic_error("empty loop");
  std::call_once(cache_->once, [this] {
    const int M = size();
    LaurentSeries cs(M);
    std::vector<cplx> out;
    auto entry = [&](const std::vector<cplx>& src, cplx Mat2::*field) {
      samples_to_coeffs(src, out);
      for (int k = 0; k < M; ++k) cs[k].*field = out[k];
    };
    entry(s_.a, &Mat2::a);
    entry(s_.b, &Mat2::b);
    entry(s_.c, &Mat2::c);
    entry(s_.d, &Mat2::d);
    cache_->coeffs = std::move(cs);
  });
  return cache_->coeffs;
}

Mat2 series_eval(const LaurentSeries& c, cplx lambda, int lo, int hi) {
  Mat2 acc = Mat2::zero();
  cplx p = std::pow(lambda, lo);
  for (int j = lo; j <= hi; ++j) {
    acc += c[j] * p;
    p *= lambda;
  }
  return acc;
}

Mat2 series_eval_lambda_derivative(const LaurentSeries& c, cplx lambda, int lo, int hi) {
  Mat2 acc = Mat2::zero();
  cplx p = std::pow(lambda, lo);
  for (int j = lo; j <= hi; ++j) {
    if (j != 0) acc += c[j] * (static_cast<double>(j) * p);
    p *= lambda;
  }
  return acc;
}

namespace {

constexpr double kEndTail = 1e-10;

// coefficients at rounding level are dropped before |lambda|^j amplifies them
Mat2 series_eval_denoised(const LaurentSeries& c, cplx lambda, int q, bool derivative = false) {
  const double floor = 64 * 2.2e-16 * c.max_norm();
  Mat2 acc = Mat2::zero();
  for (int j = -q; j <= q; ++j) {
    if (norm(c[j]) <= floor) continue;
    const cplx p = std::pow(lambda, j);
    acc += c[j] * (derivative ? static_cast<double>(j) * p : p);
  }
  return acc;
}

void check_endpoint(const LaurentSeries& c, bool negative) {
  const double top = c.max_norm();
  const int h = c.samples() / 2;
  for (int j = 1; j <= h; ++j) {
    if (norm(c[negative ? -j : j]) > kEndTail * std::max(top, 1e-300))
      throw std::domain_error("loop_eval: loop has a pole at this endpoint");
  }
}

}  // namespace

Mat2 loop_eval(const TwistedLoop& L, cplx lambda) {
  const auto& c = L.coefficients();
  const int M = L.size();
  const int h = M / 2;
  if (lambda == 0.0) {
    check_endpoint(c, true);
    return c[0];
  }
  if (!std::isfinite(std::abs(lambda))) {
    check_endpoint(c, false);
    return c[0];
  }
  if (std::abs(std::abs(lambda) - 1.0) < 1e-14) {
    // the Nyquist term splits evenly between +h and -h
    Mat2 acc = series_eval(c, lambda, -h + 1, h - 1);
    const cplx ph = std::pow(lambda, h);
    acc += c[h] * (0.5 * (ph + 1.0 / ph));
    return acc;
  }
  return series_eval_denoised(c, lambda, M / 4);
}

Mat2 loop_eval_lambda_derivative(const TwistedLoop& L, cplx lambda) {
  const auto& c = L.coefficients();
  const int M = L.size();
  if (std::abs(std::abs(lambda) - 1.0) < 1e-14)
    return series_eval_lambda_derivative(c, lambda, -(M / 2 - 1), M / 2 - 1);
  return series_eval_denoised(c, lambda, M / 4, true);
}

TwistedLoop loop_mul(const TwistedLoop& x, const TwistedLoop& y) {
  if (x.size() != y.size()) throw std::invalid_argument("loop_mul: sample counts differ");
  if (x.form() != y.form()) throw FormMismatch("loop_mul: real forms differ");
  Mat2Batch out;
  kernels::active().mul(x.samples(), y.samples(), out);
  return TwistedLoop(std::move(out), x.form(), x.twisted() && y.twisted());
}

TwistedLoop loop_inv(const TwistedLoop& x) {
  const auto& k = kernels::active();
  std::vector<cplx> det;
  k.det(x.samples(), det);
  Mat2Batch out;
  k.adj(x.samples(), out);
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(det[i]) < 1e-300 || !std::isfinite(std::abs(det[i])))
      throw NumericalFailure("loop_inv: singular sample");
    const cplx inv = 1.0 / det[i];
    out.a[i] *= inv;
    out.b[i] *= inv;
    out.c[i] *= inv;
    out.d[i] *= inv;
  }
  return TwistedLoop(std::move(out), x.form(), x.twisted());
}

TwistedLoop lambda_log_derivative(const TwistedLoop& L) {
  const auto& c = L.coefficients();
  const int M = L.size();
  LaurentSeries d(M);
  for (int j = -M / 2 + 1; j < M / 2; ++j) d[j] = c[j] * static_cast<double>(j);
  const TwistedLoop D = TwistedLoop::from_coefficients(d, L.form(), false);
  Mat2Batch out;
  kernels::active().mul(D.samples(), loop_inv(L).samples(), out);
  return TwistedLoop(std::move(out), L.form(), false);
}

TwistedLoop loop_reflect(const TwistedLoop& L) {
  const int M = L.size();
  Mat2Batch s(M);
  for (int k = 0; k < M; ++k) s.set(k, L.sample((M - k) % M));
  return TwistedLoop(std::move(s), L.form(), L.twisted());
}

LoopDefects loop_defects(const TwistedLoop& L) {
  LoopDefects d;
  const auto& c = L.coefficients();
  const int M = L.size();
  const double top = std::max(c.max_norm(), 1e-300);
  for (int j = -M / 2 + 1; j < M / 2; ++j) {
    const Mat2& x = c[j];
    const double off = (j % 2 == 0) ? std::hypot(std::abs(x.b), std::abs(x.c))
                                    : std::hypot(std::abs(x.a), std::abs(x.d));
    d.parity = std::max(d.parity, off / top);
    if (L.form() == RealForm::split) d.real_form = std::max(d.real_form, max_imag(x) / top);
  }
  for (int k = 0; k < M; ++k) {
    const Mat2 s = L.sample(k);
    d.det = std::max(d.det, std::abs(s.det() - 1.0));
    if (L.form() == RealForm::unitary) {
      // gamma(conj lambda)^dagger gamma(lambda) = I
      const Mat2 r = L.sample((M - k) % M).adjoint() * s - Mat2::identity();
      d.real_form = std::max(d.real_form, norm(r));
    }
  }
  return d;
}

void dump_loop_csv(std::ostream& os, const TwistedLoop& L) {
  const auto& c = L.coefficients();
  const int M = L.size();
  char buf[512];
  os << "j,re_a,im_a,re_b,im_b,re_c,im_c,re_d,im_d\n";
  for (int j = -M / 2; j < M / 2; ++j) {
    const Mat2& x = c[j];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", j,
                  x.a.real(), x.a.imag(), x.b.real(), x.b.imag(), x.c.real(), x.c.imag(),
                  x.d.real(), x.d.imag());
    os << buf;
  }
}

}  // namespace gcauchy
