#pragma once

// Truncated Taylor series in one variable, c[k] = f^(k)(t0) / k!.
// Used to get exact derivatives of the catalog curves and of quantities
// built from them (unit tangents, principal normals).

#include <array>
#include <cmath>

namespace gcauchy {

template <int K>
struct Taylor {
  std::array<double, K + 1> c{};

  Taylor() = default;
  Taylor(double v) { c[0] = v; }  // NOLINT: constants promote implicitly
  static Taylor variable(double t0) {
    Taylor x(t0);
    if (K >= 1) x.c[1] = 1.0;
    return x;
  }

  double value() const { return c[0]; }
  // k-th derivative at t0
  double derivative(int k) const {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[k] * f;
  }
  // series of d/dt; the top coefficient is lost
  Taylor shifted() const {
    Taylor d;
    for (int k = 0; k < K; ++k) d.c[k] = (k + 1) * c[k + 1];
    return d;
  }
};

template <int K>
Taylor<K> operator+(Taylor<K> a, const Taylor<K>& b) {
  for (int k = 0; k <= K; ++k) a.c[k] += b.c[k];
  return a;
}
template <int K>
Taylor<K> operator-(Taylor<K> a, const Taylor<K>& b) {
  for (int k = 0; k <= K; ++k) a.c[k] -= b.c[k];
  return a;
}
template <int K>
Taylor<K> operator-(Taylor<K> a) {
  for (auto& x : a.c) x = -x;
  return a;
}
template <int K>
Taylor<K> operator*(const Taylor<K>& a, const Taylor<K>& b) {
  Taylor<K> r;
  for (int n = 0; n <= K; ++n)
    for (int k = 0; k <= n; ++k) r.c[n] += a.c[k] * b.c[n - k];
  return r;
}
template <int K>
Taylor<K> operator/(const Taylor<K>& a, const Taylor<K>& b) {
  Taylor<K> q;
  for (int n = 0; n <= K; ++n) {
    double s = a.c[n];
    for (int k = 1; k <= n; ++k) s -= b.c[k] * q.c[n - k];
    q.c[n] = s / b.c[0];
  }
  return q;
}
template <int K> Taylor<K> operator+(Taylor<K> a, double s) { a.c[0] += s; return a; }
template <int K> Taylor<K> operator+(double s, Taylor<K> a) { a.c[0] += s; return a; }
template <int K> Taylor<K> operator-(Taylor<K> a, double s) { a.c[0] -= s; return a; }
template <int K> Taylor<K> operator-(double s, const Taylor<K>& a) { return Taylor<K>(s) - a; }
template <int K> Taylor<K> operator*(Taylor<K> a, double s) { for (auto& x : a.c) x *= s; return a; }
template <int K> Taylor<K> operator*(double s, Taylor<K> a) { for (auto& x : a.c) x *= s; return a; }
template <int K> Taylor<K> operator/(Taylor<K> a, double s) { for (auto& x : a.c) x /= s; return a; }
template <int K> Taylor<K> operator/(double s, const Taylor<K>& a) { return Taylor<K>(s) / a; }

template <int K>
Taylor<K> exp(const Taylor<K>& a) {
  Taylor<K> e;
  e.c[0] = std::exp(a.c[0]);
  for (int n = 1; n <= K; ++n) {
    double s = 0;
    for (int k = 1; k <= n; ++k) s += k * a.c[k] * e.c[n - k];
    e.c[n] = s / n;
  }
  return e;
}

// sin/cos (sign = -1) and sinh/cosh (sign = +1) share one recurrence
template <int K>
void sincos_like(const Taylor<K>& a, Taylor<K>& s, Taylor<K>& c, double sign) {
  if (sign < 0) {
    s.c[0] = std::sin(a.c[0]);
    c.c[0] = std::cos(a.c[0]);
  } else {
    s.c[0] = std::sinh(a.c[0]);
    c.c[0] = std::cosh(a.c[0]);
  }
  for (int n = 1; n <= K; ++n) {
    double ss = 0, cc = 0;
    for (int k = 1; k <= n; ++k) {
      ss += k * a.c[k] * c.c[n - k];
      cc += k * a.c[k] * s.c[n - k];
    }
    s.c[n] = ss / n;
    c.c[n] = sign * cc / n;
  }
}

template <int K> Taylor<K> sin(const Taylor<K>& a) { Taylor<K> s, c; sincos_like(a, s, c, -1.0); return s; }
template <int K> Taylor<K> cos(const Taylor<K>& a) { Taylor<K> s, c; sincos_like(a, s, c, -1.0); return c; }
template <int K> Taylor<K> sinh(const Taylor<K>& a) { Taylor<K> s, c; sincos_like(a, s, c, 1.0); return s; }
template <int K> Taylor<K> cosh(const Taylor<K>& a) { Taylor<K> s, c; sincos_like(a, s, c, 1.0); return c; }

template <int K>
Taylor<K> sqrt(const Taylor<K>& a) {
  Taylor<K> r;
  r.c[0] = std::sqrt(a.c[0]);
  for (int n = 1; n <= K; ++n) {
    double s = a.c[n];
    for (int k = 1; k < n; ++k) s -= r.c[k] * r.c[n - k];
    r.c[n] = s / (2 * r.c[0]);
  }
  return r;
}

}  // namespace gcauchy
