// Dual-number jets: first/second derivatives of composite expressions match
// closed forms, arithmetic satisfies the usual calculus identities, and the
// second-order hessian is symmetric.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "lorentz/ad.hpp"

using namespace lorentz;

namespace {

// f(x, y) = exp(sin(x) * y) + sqrt(x + 2) * atan(y) and its hand-computed
// partial derivatives.
double f_val(double x, double y) {
  return std::exp(std::sin(x) * y) + std::sqrt(x + 2.0) * std::atan(y);
}
double f_dx(double x, double y) {
  return std::exp(std::sin(x) * y) * std::cos(x) * y +
         0.5 / std::sqrt(x + 2.0) * std::atan(y);
}
double f_dy(double x, double y) {
  return std::exp(std::sin(x) * y) * std::sin(x) + std::sqrt(x + 2.0) / (1.0 + y * y);
}
double f_dxx(double x, double y) {
  const double e = std::exp(std::sin(x) * y);
  return e * std::cos(x) * y * std::cos(x) * y - e * std::sin(x) * y -
         0.25 * std::pow(x + 2.0, -1.5) * std::atan(y);
}
double f_dxy(double x, double y) {
  const double e = std::exp(std::sin(x) * y);
  return e * std::cos(x) * (1.0 + std::sin(x) * y) +
         0.5 / std::sqrt(x + 2.0) / (1.0 + y * y);
}
double f_dyy(double x, double y) {
  const double e = std::exp(std::sin(x) * y);
  return e * std::sin(x) * std::sin(x) -
         std::sqrt(x + 2.0) * 2.0 * y / ((1.0 + y * y) * (1.0 + y * y));
}

template <class J>
J f_jet(const J& x, const J& y) {
  return exp(sin(x) * y) + sqrt(x + 2.0) * atan(y);
}

}  // namespace

TEST_CASE("first-order jet matches closed-form gradient") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = u(rng), y = u(rng);
    Jet1 jx = Jet1::seed(2, 0, x);
    Jet1 jy = Jet1::seed(2, 1, y);
    Jet1 r = f_jet(jx, jy);
    CHECK(r.v == doctest::Approx(f_val(x, y)).epsilon(1e-14));
    CHECK(r.d[0] == doctest::Approx(f_dx(x, y)).epsilon(1e-12));
    CHECK(r.d[1] == doctest::Approx(f_dy(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("second-order jet matches closed-form hessian") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = u(rng), y = u(rng);
    Jet2 jx = Jet2::seed(2, 0, x);
    Jet2 jy = Jet2::seed(2, 1, y);
    Jet2 r = f_jet(jx, jy);
    CHECK(r.v == doctest::Approx(f_val(x, y)).epsilon(1e-14));
    CHECK(r.d[0] == doctest::Approx(f_dx(x, y)).epsilon(1e-12));
    CHECK(r.d[1] == doctest::Approx(f_dy(x, y)).epsilon(1e-12));
    CHECK(r.hess(0, 0) == doctest::Approx(f_dxx(x, y)).epsilon(1e-11));
    CHECK(r.hess(0, 1) == doctest::Approx(f_dxy(x, y)).epsilon(1e-11));
    CHECK(r.hess(1, 1) == doctest::Approx(f_dyy(x, y)).epsilon(1e-11));
    CHECK(r.hess(0, 1) == r.hess(1, 0));  // symmetric exactly
  }
}

TEST_CASE("remaining elementary functions against analytic derivatives") {
  const double x = 0.37;
  Jet2 j = Jet2::seed(1, 0, x);

  Jet2 c = cos(j);
  CHECK(c.d[0] == doctest::Approx(-std::sin(x)).epsilon(1e-14));
  CHECK(c.hess(0, 0) == doctest::Approx(-std::cos(x)).epsilon(1e-14));

  Jet2 l = log(j + 2.0);
  CHECK(l.d[0] == doctest::Approx(1.0 / (x + 2.0)).epsilon(1e-14));
  CHECK(l.hess(0, 0) == doctest::Approx(-1.0 / ((x + 2.0) * (x + 2.0))).epsilon(1e-14));

  Jet2 t = tanh(j);
  const double th = std::tanh(x);
  CHECK(t.d[0] == doctest::Approx(1.0 - th * th).epsilon(1e-13));
  CHECK(t.hess(0, 0) == doctest::Approx(-2.0 * th * (1.0 - th * th)).epsilon(1e-13));

  Jet2 s = sqrt(j);
  CHECK(s.d[0] == doctest::Approx(0.5 / std::sqrt(x)).epsilon(1e-14));
  CHECK(s.hess(0, 0) == doctest::Approx(-0.25 * std::pow(x, -1.5)).epsilon(1e-13));
}

TEST_CASE("quotient and product rules on random jets") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double x = u(rng), y = u(rng);
    Jet1 a = Jet1::seed(2, 0, x);
    Jet1 b = Jet1::seed(2, 1, y);
    Jet1 q = a / b;
    CHECK(q.v == doctest::Approx(x / y).epsilon(1e-15));
    CHECK(q.d[0] == doctest::Approx(1.0 / y).epsilon(1e-14));
    CHECK(q.d[1] == doctest::Approx(-x / (y * y)).epsilon(1e-14));
    Jet1 p = a * b;
    CHECK(p.d[0] == doctest::Approx(y).epsilon(1e-15));
    CHECK(p.d[1] == doctest::Approx(x).epsilon(1e-15));
    // (a*b)/b recovers a in value and derivative
    Jet1 r = p / b - a;
    CHECK(std::fabs(r.v) < 1e-14);
    CHECK(std::fabs(r.d[0]) < 1e-14);
    CHECK(std::fabs(r.d[1]) < 1e-14);
  }
}

TEST_CASE("constants and seeds carry no spurious derivatives") {
  Jet1 k = 3.5;  // implicit constant promotion
  CHECK(k.v == 3.5);
  for (int i = 0; i < kMaxDim; ++i) CHECK(k.d[i] == 0.0);

  Jet2 s = Jet2::seed(3, 2, -1.25);
  CHECK(s.v == -1.25);
  CHECK(s.d[2] == 1.0);
  CHECK(s.d[0] == 0.0);
  CHECK(s.d[1] == 0.0);
  for (int i = 0; i < kMaxDim * kMaxDim; ++i) CHECK(s.h[i] == 0.0);

  // mixed double/jet arithmetic keeps the seeded direction
  Jet1 m = 2.0 * Jet1::seed(2, 1, 0.5) + 1.0;
  CHECK(m.v == 2.0);
  CHECK(m.d[0] == 0.0);
  CHECK(m.d[1] == 2.0);
}

TEST_CASE("value() hook strips the derivative part") {
  Jet1 a = Jet1::seed(2, 0, 1.75);
  Jet2 b = Jet2::seed(2, 1, -0.5);
  CHECK(value(a) == 1.75);
  CHECK(value(b) == -0.5);
  CHECK(value(3.25) == 3.25);
}
