// lorentzlab - forward-mode dual-number (jet) arithmetic
//
// Jet1 carries a value and gradient, Jet2 additionally a full Hessian, with
// respect to n <= kMaxDim seed variables. Propagation through arithmetic and
// the elementary functions is exact (machine precision), which is what the
// curvature identities in the test suite rely on. Generic field evaluators
// are written against an arbitrary scalar T and instantiated for double,
// Jet1 and Jet2; unqualified calls to sin/cos/... resolve here via ADL.

#pragma once

#include <array>
#include <cmath>

#include "lorentz/smallmat.hpp"

namespace lorentz {

// ---------------------------------------------------------------------------
// First-order jet: value + gradient.
struct Jet1 {
  int n = 0;
  double v = 0.0;
  std::array<double, kMaxDim> d{};

  Jet1() = default;
  Jet1(double value) : n(0), v(value) { d.fill(0.0); }  // constant (NOLINT: implicit)
  Jet1(int dim, double value) : n(dim), v(value) { d.fill(0.0); }

  static Jet1 seed(int dim, int index, double value) {
    Jet1 j(dim, value);
    j.d[static_cast<size_t>(index)] = 1.0;
    return j;
  }
};

inline double value(const Jet1& x) { return x.v; }

namespace detail {
inline int merged_dim(int a, int b) { return a > b ? a : b; }
}  // namespace detail

inline Jet1 operator+(const Jet1& a, const Jet1& b) {
  Jet1 r(detail::merged_dim(a.n, b.n), a.v + b.v);
  for (int i = 0; i < r.n; i++) r.d[i] = a.d[i] + b.d[i];
  return r;
}
inline Jet1 operator-(const Jet1& a, const Jet1& b) {
  Jet1 r(detail::merged_dim(a.n, b.n), a.v - b.v);
  for (int i = 0; i < r.n; i++) r.d[i] = a.d[i] - b.d[i];
  return r;
}
inline Jet1 operator-(const Jet1& a) {
  Jet1 r(a.n, -a.v);
  for (int i = 0; i < r.n; i++) r.d[i] = -a.d[i];
  return r;
}
inline Jet1 operator*(const Jet1& a, const Jet1& b) {
  Jet1 r(detail::merged_dim(a.n, b.n), a.v * b.v);
  for (int i = 0; i < r.n; i++) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}
inline Jet1 operator/(const Jet1& a, const Jet1& b) {
  Jet1 r(detail::merged_dim(a.n, b.n), a.v / b.v);
  double inv = 1.0 / b.v;
  for (int i = 0; i < r.n; i++) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
  return r;
}
inline Jet1 operator+(const Jet1& a, double b) { return a + Jet1(b); }
inline Jet1 operator+(double a, const Jet1& b) { return Jet1(a) + b; }
inline Jet1 operator-(const Jet1& a, double b) { return a - Jet1(b); }
inline Jet1 operator-(double a, const Jet1& b) { return Jet1(a) - b; }
inline Jet1 operator*(const Jet1& a, double b) { return a * Jet1(b); }
inline Jet1 operator*(double a, const Jet1& b) { return Jet1(a) * b; }
inline Jet1 operator/(const Jet1& a, double b) { return a / Jet1(b); }
inline Jet1 operator/(double a, const Jet1& b) { return Jet1(a) / b; }

// Apply a univariate function with known value/first derivative at a.v.
inline Jet1 chain1(const Jet1& a, double f, double df) {
  Jet1 r(a.n, f);
  for (int i = 0; i < r.n; i++) r.d[i] = df * a.d[i];
  return r;
}

inline Jet1 sin(const Jet1& a) { return chain1(a, std::sin(a.v), std::cos(a.v)); }
inline Jet1 cos(const Jet1& a) { return chain1(a, std::cos(a.v), -std::sin(a.v)); }
inline Jet1 exp(const Jet1& a) {
  double e = std::exp(a.v);
  return chain1(a, e, e);
}
inline Jet1 log(const Jet1& a) { return chain1(a, std::log(a.v), 1.0 / a.v); }
inline Jet1 sqrt(const Jet1& a) {
  double s = std::sqrt(a.v);
  return chain1(a, s, 0.5 / s);
}
inline Jet1 tanh(const Jet1& a) {
  double t = std::tanh(a.v);
  return chain1(a, t, 1.0 - t * t);
}
inline Jet1 atan(const Jet1& a) {
  return chain1(a, std::atan(a.v), 1.0 / (1.0 + a.v * a.v));
}

// ---------------------------------------------------------------------------
// Second-order jet: value + gradient + symmetric Hessian (stored full).
struct Jet2 {
  int n = 0;
  double v = 0.0;
  std::array<double, kMaxDim> d{};
  std::array<double, kMaxDim * kMaxDim> h{};

  Jet2() = default;
  Jet2(double value) : n(0), v(value) {}  // constant (NOLINT: implicit)
  Jet2(int dim, double value) : n(dim), v(value) {}

  static Jet2 seed(int dim, int index, double value) {
    Jet2 j(dim, value);
    j.d[static_cast<size_t>(index)] = 1.0;
    return j;
  }
  double hess(int i, int j) const { return h[static_cast<size_t>(i * kMaxDim + j)]; }
  double& hess(int i, int j) { return h[static_cast<size_t>(i * kMaxDim + j)]; }
};

inline double value(const Jet2& x) { return x.v; }

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r(detail::merged_dim(a.n, b.n), a.v + b.v);
  for (int i = 0; i < r.n; i++) r.d[i] = a.d[i] + b.d[i];
  for (int i = 0; i < r.n; i++)
    for (int j = 0; j < r.n; j++) r.hess(i, j) = a.hess(i, j) + b.hess(i, j);
  return r;
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r(detail::merged_dim(a.n, b.n), a.v - b.v);
  for (int i = 0; i < r.n; i++) r.d[i] = a.d[i] - b.d[i];
  for (int i = 0; i < r.n; i++)
    for (int j = 0; j < r.n; j++) r.hess(i, j) = a.hess(i, j) - b.hess(i, j);
  return r;
}
inline Jet2 operator-(const Jet2& a) {
  Jet2 r(a.n, -a.v);
  for (int i = 0; i < r.n; i++) r.d[i] = -a.d[i];
  for (int i = 0; i < r.n; i++)
    for (int j = 0; j < r.n; j++) r.hess(i, j) = -a.hess(i, j);
  return r;
}
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r(detail::merged_dim(a.n, b.n), a.v * b.v);
  for (int i = 0; i < r.n; i++) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  for (int i = 0; i < r.n; i++)
    for (int j = 0; j < r.n; j++)
      r.hess(i, j) = a.hess(i, j) * b.v + a.d[i] * b.d[j] + a.d[j] * b.d[i] +
                     a.v * b.hess(i, j);
  return r;
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) {
  // a/b = a * (1/b); compute reciprocal jet first.
  Jet2 inv(b.n, 1.0 / b.v);
  double w = inv.v;
  double w2 = w * w;
  for (int i = 0; i < b.n; i++) inv.d[i] = -b.d[i] * w2;
  for (int i = 0; i < b.n; i++)
    for (int j = 0; j < b.n; j++)
      inv.hess(i, j) = (2.0 * b.d[i] * b.d[j] * w - b.hess(i, j)) * w2;
  return a * inv;
}
inline Jet2 operator+(const Jet2& a, double b) { return a + Jet2(b); }
inline Jet2 operator+(double a, const Jet2& b) { return Jet2(a) + b; }
inline Jet2 operator-(const Jet2& a, double b) { return a - Jet2(b); }
inline Jet2 operator-(double a, const Jet2& b) { return Jet2(a) - b; }
inline Jet2 operator*(const Jet2& a, double b) { return a * Jet2(b); }
inline Jet2 operator*(double a, const Jet2& b) { return Jet2(a) * b; }
inline Jet2 operator/(const Jet2& a, double b) { return a / Jet2(b); }
inline Jet2 operator/(double a, const Jet2& b) { return Jet2(a) / b; }

// Apply a univariate function with value/first/second derivative at a.v.
inline Jet2 chain2(const Jet2& a, double f, double df, double ddf) {
  Jet2 r(a.n, f);
  for (int i = 0; i < r.n; i++) r.d[i] = df * a.d[i];
  for (int i = 0; i < r.n; i++)
    for (int j = 0; j < r.n; j++)
      r.hess(i, j) = ddf * a.d[i] * a.d[j] + df * a.hess(i, j);
  return r;
}

inline Jet2 sin(const Jet2& a) {
  double s = std::sin(a.v), c = std::cos(a.v);
  return chain2(a, s, c, -s);
}
inline Jet2 cos(const Jet2& a) {
  double s = std::sin(a.v), c = std::cos(a.v);
  return chain2(a, c, -s, -c);
}
inline Jet2 exp(const Jet2& a) {
  double e = std::exp(a.v);
  return chain2(a, e, e, e);
}
inline Jet2 log(const Jet2& a) {
  double inv = 1.0 / a.v;
  return chain2(a, std::log(a.v), inv, -inv * inv);
}
inline Jet2 sqrt(const Jet2& a) {
  double s = std::sqrt(a.v);
  return chain2(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet2 tanh(const Jet2& a) {
  double t = std::tanh(a.v);
  double sech2 = 1.0 - t * t;
  return chain2(a, t, sech2, -2.0 * t * sech2);
}
inline Jet2 atan(const Jet2& a) {
  double den = 1.0 + a.v * a.v;
  return chain2(a, std::atan(a.v), 1.0 / den, -2.0 * a.v / (den * den));
}

// Integer power for any of the scalar types (exponentiation by squaring
// is unnecessary at these sizes; plain products keep jets exact).
template <class T>
T ipow(const T& x, int k) {
  T r(1.0);
  for (int i = 0; i < k; i++) r = r * x;
  return r;
}

}  // namespace lorentz
