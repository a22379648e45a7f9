#pragma once

// Loops on the unit circle |lambda| = 1, held as M samples at
// lambda_k = exp(2 pi i k / M) with Laurent coefficients computed on demand.

#include <iosfwd>
#include <memory>
#include <mutex>
#include <vector>

#include "gcauchy/kernels.hpp"
#include "gcauchy/minkalg.hpp"

namespace gcauchy {

// Coefficients c_j, j in [-M/2, M/2), stored in FFT order.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  explicit LaurentSeries(int M) : c_(M, Mat2::zero()) {}

  int samples() const { return static_cast<int>(c_.size()); }
  int max_degree() const { return samples() / 2 - 1; }
  const Mat2& operator[](int j) const { return c_[index(j)]; }
  Mat2& operator[](int j) { return c_[index(j)]; }

  double max_norm() const;
  // max ||c_j|| over |j| >= n, relative to max_norm
  double tail(int n) const;

 private:
  int index(int j) const {
    const int M = samples();
    return ((j % M) + M) % M;
  }
  std::vector<Mat2> c_;
};

// Circle nodes lambda_k, cached per M.
const std::vector<cplx>& circle_nodes(int M);

// FFT over one entry array (length M): coefficients = (1/M) sum_k s_k lambda_k^{-j}.
void samples_to_coeffs(const std::vector<cplx>& s, std::vector<cplx>& c);
void coeffs_to_samples(const std::vector<cplx>& c, std::vector<cplx>& s);

class TwistedLoop {
 public:
  TwistedLoop() = default;
  TwistedLoop(Mat2Batch samples, RealForm form, bool twisted = true);

  static TwistedLoop constant(int M, const Mat2& m, RealForm form);
  static TwistedLoop from_coefficients(const LaurentSeries& c, RealForm form, bool twisted = true);

  int size() const { return static_cast<int>(s_.size()); }
  RealForm form() const { return form_; }
  bool twisted() const { return twisted_; }
  Mat2 sample(int k) const { return s_.get(k); }
  const Mat2Batch& samples() const { return s_; }
  const LaurentSeries& coefficients() const;

 private:
  struct Cache {
    std::once_flag once;
    LaurentSeries coeffs;
  };
  Mat2Batch s_;
  RealForm form_ = RealForm::split;
  bool twisted_ = true;
  std::shared_ptr<Cache> cache_;
};

// Sum c_j lambda^j. On the circle the full trigonometric interpolant is
// used (exact at the nodes). Off the circle only |j| <= M/4 enters and
// coefficients at rounding level are skipped, so |lambda|^j does not
// amplify noise.
Mat2 loop_eval(const TwistedLoop& L, cplx lambda);
// lambda d/dlambda of the same sum
Mat2 loop_eval_lambda_derivative(const TwistedLoop& L, cplx lambda);
Mat2 series_eval(const LaurentSeries& c, cplx lambda, int lo, int hi);
Mat2 series_eval_lambda_derivative(const LaurentSeries& c, cplx lambda, int lo, int hi);

TwistedLoop loop_mul(const TwistedLoop& x, const TwistedLoop& y);
TwistedLoop loop_inv(const TwistedLoop& x);
// (lambda d/dlambda L) L^{-1}
TwistedLoop lambda_log_derivative(const TwistedLoop& L);
// L(1/lambda)
TwistedLoop loop_reflect(const TwistedLoop& L);

struct LoopDefects {
  double parity = 0;     // off-parity coefficient mass, relative
  double real_form = 0;  // split: imag parts of c_j; unitary: rho-relation
  double det = 0;        // max |det - 1| over samples
};
LoopDefects loop_defects(const TwistedLoop& L);

// rows: j, then re/im of c_j entries a, b, c, d
void dump_loop_csv(std::ostream& os, const TwistedLoop& L);

struct BirkhoffOptions {
  int truncation = 16;
  double condition_limit = 1e12;
  double residual_limit = 1e-6;
  double tail_threshold = 1e-8;
  // reconstruction residual above which the least-squares section is tried
  double refine_above = 1e-14;
};

struct BirkhoffFactors {
  TwistedLoop minus;
  TwistedLoop plus;
  double residual = 0;
  double condition = 0;
  int truncation = 0;
};

enum class BirkhoffStatus { ok, singular, ill_conditioned, residual };
const char* to_string(BirkhoffStatus s);

struct BirkhoffOutcome {
  BirkhoffStatus status = BirkhoffStatus::ok;
  BirkhoffFactors factors;  // filled when status is ok
  double residual = 0;
  double condition = 0;
};

// Phi = H_- H_+ with H_-(inf) = I. Non-throwing variant for per-node use.
BirkhoffOutcome try_birkhoff_left(const TwistedLoop& phi, const BirkhoffOptions& opt = {});
BirkhoffFactors birkhoff_left(const TwistedLoop& phi, const BirkhoffOptions& opt = {});
// Phi = H_+ H_- with H_+(0) = I.
BirkhoffOutcome try_birkhoff_right(const TwistedLoop& phi, const BirkhoffOptions& opt = {});
BirkhoffFactors birkhoff_right(const TwistedLoop& phi, const BirkhoffOptions& opt = {});

}  // namespace gcauchy
