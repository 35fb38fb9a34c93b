// Field wrappers and jet evaluation: scalar/vector/metric jets against closed
// forms in both derivative modes, Lie brackets, and the small constructor
// helpers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lorentz/fields.hpp"

using namespace lorentz;

namespace {

VecN vec3(double a, double b, double c) {
  VecN v(3);
  v[0] = a;
  v[1] = b;
  v[2] = c;
  return v;
}

// phi(x) = x0^2 sin(x1) + x2
ScalarField test_scalar() {
  return ScalarField::make(3, [](const auto* x) { return x[0] * x[0] * sin(x[1]) + x[2]; });
}

}  // namespace

TEST_CASE("scalar jet matches closed-form gradient and hessian") {
  ScalarField f = test_scalar();
  VecN x = vec3(1.2, 0.4, -0.7);
  const double s = std::sin(x[1]), c = std::cos(x[1]);

  for (DerivMode mode : {DerivMode::dual, DerivMode::finite_difference}) {
    const double tol = (mode == DerivMode::dual) ? 1e-13 : 1e-5;
    ScalarJet jet = evaluate_jet(f, x, 2, mode);
    CHECK(jet.n == 3);
    CHECK(jet.order == 2);
    CHECK(jet.value == doctest::Approx(x[0] * x[0] * s + x[2]).epsilon(1e-14));
    CHECK(std::fabs(jet.grad[0] - 2.0 * x[0] * s) < tol);
    CHECK(std::fabs(jet.grad[1] - x[0] * x[0] * c) < tol);
    CHECK(std::fabs(jet.grad[2] - 1.0) < tol);
    CHECK(std::fabs(jet.hess(0, 0) - 2.0 * s) < tol * 10);
    CHECK(std::fabs(jet.hess(0, 1) - 2.0 * x[0] * c) < tol * 10);
    CHECK(std::fabs(jet.hess(1, 1) + x[0] * x[0] * s) < tol * 10);
    CHECK(std::fabs(jet.hess(2, 2)) < tol * 10);
  }
}

TEST_CASE("vector jet jacobian convention is d(component i)/d(coordinate j)") {
  // X = (x1*x2, x0^2, sin(x2))
  VectorField X = VectorField::make(3, [](const auto* x, auto* out) {
    out[0] = x[1] * x[2];
    out[1] = x[0] * x[0];
    out[2] = sin(x[2]);
  });
  VecN x = vec3(0.3, -1.1, 0.8);
  VectorJet jet = evaluate_jet(X, x, 1);
  CHECK(jet.value[0] == doctest::Approx(x[1] * x[2]).epsilon(1e-15));
  CHECK(jet.jac(0, 1) == doctest::Approx(x[2]).epsilon(1e-13));
  CHECK(jet.jac(0, 2) == doctest::Approx(x[1]).epsilon(1e-13));
  CHECK(jet.jac(1, 0) == doctest::Approx(2.0 * x[0]).epsilon(1e-13));
  CHECK(jet.jac(2, 2) == doctest::Approx(std::cos(x[2])).epsilon(1e-13));
  CHECK(std::fabs(jet.jac(0, 0)) < 1e-13);
  CHECK(std::fabs(jet.jac(1, 1)) < 1e-13);
}

TEST_CASE("metric jet first and second coordinate derivatives") {
  // g = diag(exp(x0), 1 + x1^2, 1) with one off-diagonal x0*x1 entry
  MetricField g = MetricField::make(3, 0, [](const auto* x, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
    for (int i = 0; i < 9; ++i) out[i] = T(0.0);
    out[0] = exp(x[0]);
    out[4] = T(1.0) + x[1] * x[1];
    out[8] = T(1.0);
    out[1] = x[0] * x[1];
    out[3] = x[0] * x[1];
  });
  VecN x = vec3(0.4, -0.6, 0.2);

  for (DerivMode mode : {DerivMode::dual, DerivMode::finite_difference}) {
    const double tol = (mode == DerivMode::dual) ? 1e-12 : 1e-4;
    MetricJet jet = evaluate_jet(g, x, 2, mode);
    CHECK(jet.value(0, 0) == doctest::Approx(std::exp(x[0])).epsilon(1e-14));
    // dg(k)(i,j) = d g_ij / d x_k
    CHECK(std::fabs(jet.dg(0)(0, 0) - std::exp(x[0])) < tol);
    CHECK(std::fabs(jet.dg(1)(1, 1) - 2.0 * x[1]) < tol);
    CHECK(std::fabs(jet.dg(0)(0, 1) - x[1]) < tol);
    CHECK(std::fabs(jet.dg(1)(0, 1) - x[0]) < tol);
    CHECK(std::fabs(jet.dg(2)(0, 0)) < tol);
    CHECK(std::fabs(jet.ddg(0, 0)(0, 0) - std::exp(x[0])) < tol * 100);
    CHECK(std::fabs(jet.ddg(1, 1)(1, 1) - 2.0) < tol * 100);
    CHECK(std::fabs(jet.ddg(0, 1)(0, 1) - 1.0) < tol * 100);
  }
}

TEST_CASE("eval_value overloads agree with jet values") {
  ScalarField f = test_scalar();
  VectorField X = coordinate_field(3, 1);
  VecN x = vec3(0.1, 0.2, 0.3);
  CHECK(eval_value(f, x) == evaluate_jet(f, x, 0).value);
  VecN xv = eval_value(X, x);
  CHECK(xv[0] == 0.0);
  CHECK(xv[1] == 1.0);
  CHECK(xv[2] == 0.0);
}

TEST_CASE("lie bracket of coordinate-scaled fields") {
  // [d1, x1 d2] = d2
  VectorField a = coordinate_field(3, 1);
  VectorField b = VectorField::make(3, [](const auto* x, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
    out[0] = T(0.0);
    out[1] = T(0.0);
    out[2] = x[1];
  });
  VecN x = vec3(0.7, -0.9, 0.4);
  VecN br = lie_bracket(a, b, x);
  CHECK(std::fabs(br[0]) < 1e-12);
  CHECK(std::fabs(br[1]) < 1e-12);
  CHECK(br[2] == doctest::Approx(1.0).epsilon(1e-12));

  // antisymmetry
  VecN rb = lie_bracket(b, a, x);
  for (int i = 0; i < 3; ++i) CHECK(br[i] == doctest::Approx(-rb[i]).epsilon(1e-12));

  // field form evaluates to the same vector, but cannot provide second jets
  VectorField brf = lie_bracket_field(a, b);
  VecN brv = eval_value(brf, x);
  for (int i = 0; i < 3; ++i) CHECK(std::fabs(brv[i] - br[i]) < 1e-12);
  CHECK_THROWS_AS((void)evaluate_jet(brf, x, 2), EvalDomainError);
}

TEST_CASE("constant helpers") {
  ScalarField c = constant_scalar(4, 2.5);
  VecN x(4);
  x[0] = 9.0;
  CHECK(eval_value(c, x) == 2.5);
  ScalarJet cj = evaluate_jet(c, x, 2);
  for (int i = 0; i < 4; ++i) CHECK(cj.grad[i] == 0.0);

  VecN w(3);
  w[0] = 1.5;
  w[2] = -0.5;
  VectorField cv = constant_vector(3, w);
  VecN got = eval_value(cv, vec3(5.0, 6.0, 7.0));
  CHECK(got[0] == 1.5);
  CHECK(got[1] == 0.0);
  CHECK(got[2] == -0.5);
  VectorJet vj = evaluate_jet(cv, vec3(1.0, 2.0, 3.0), 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(vj.jac(i, j) == 0.0);
}
