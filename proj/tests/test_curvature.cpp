// Curvature pipeline: christoffels (coordinate and orthonormal), riemann
// symmetries, ricci/scalar on reference metrics, weyl dimension contract,
// causal classification, and geodesic integration sanity.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "lorentz/curvature.hpp"
#include "lorentz/gcn.hpp"

using namespace lorentz;

namespace {

VecN vec3(double a, double b, double c) {
  VecN v(3);
  v[0] = a;
  v[1] = b;
  v[2] = c;
  return v;
}

MetricField sphere2() {
  return MetricField::make(2, 0, [](const auto* x, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
    T s = sin(x[0]);
    out[0] = T(1.0);
    out[1] = T(0.0);
    out[2] = T(0.0);
    out[3] = s * s;
  });
}

MetricField minkowski(int n) {
  return MetricField::make(n, 1, [n](const auto* x, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
    (void)x;
    for (int i = 0; i < n * n; ++i) out[i] = T(0.0);
    out[0] = T(-1.0);
    for (int i = 1; i < n; ++i) out[i * n + i] = T(1.0);
  });
}

}  // namespace

TEST_CASE("round sphere: scalar curvature 2 and sectional riemann entry") {
  MetricField g = sphere2();
  VecN p(2);
  p[0] = 0.9;
  p[1] = 0.3;
  CHECK(scalar_curv(g, p) == doctest::Approx(2.0).epsilon(1e-10));
  RiemannTensor r = riemann(g, p);
  const double s = std::sin(p[0]);
  CHECK(r.at(0, 1, 0, 1) == doctest::Approx(s * s).epsilon(1e-9));
  MatN ric = ricci(g, p);
  CHECK(ric(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ric(1, 1) == doctest::Approx(s * s).epsilon(1e-9));
}

TEST_CASE("coordinate christoffels of the twisted family against closed forms") {
  const double c = 2.0;
  MetricField g = gcn_metric({c, 3});
  VecN q = vec3(0.4, -1.1, 0.7);
  ChristoffelTable cc = christoffel_coordinates(g, q);
  const double c2 = c * c, x2 = q[2];
  CHECK(cc.at(2, 0, 1) == doctest::Approx(c2 / 2.0).epsilon(1e-10));
  CHECK(cc.at(0, 0, 2) == doctest::Approx(c2 / 2.0 * x2).epsilon(1e-10));
  CHECK(cc.at(1, 0, 2) == doctest::Approx(-c2 / 2.0).epsilon(1e-10));
  CHECK(cc.at(2, 1, 1) == doctest::Approx(c2 * x2).epsilon(1e-10));
  CHECK(cc.at(0, 1, 2) == doctest::Approx(0.5 * (1.0 + c2 * x2 * x2)).epsilon(1e-10));
  CHECK(cc.at(1, 1, 2) == doctest::Approx(-c2 / 2.0 * x2).epsilon(1e-10));
  double asym = 0.0;  // symmetric in the lower index pair
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) asym = std::max(asym, std::fabs(cc.at(k, i, j) - cc.at(k, j, i)));
  CHECK(asym < 1e-12);
}

TEST_CASE("finite-difference christoffels agree with the dual-number route") {
  MetricField g = sphere2();
  VecN p(2);
  p[0] = 1.1;
  p[1] = -0.4;
  ChristoffelTable a = christoffel_coordinates(g, p, DerivMode::dual);
  ChristoffelTable b = christoffel_coordinates(g, p, DerivMode::finite_difference, 1e-5);
  double dev = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) dev = std::max(dev, std::fabs(a.at(k, i, j) - b.at(k, i, j)));
  CHECK(dev < 1e-8);
}

TEST_CASE("orthonormal christoffels: constants and the coordinate cross-check") {
  const double c = 1.6;
  GcnParams gp{c, 3};
  MetricField g = gcn_metric(gp);
  Frame fr = gcn_frame(gp);
  VecN q = vec3(0.4, 1.2, -0.8);

  CHECK(frame_residual(g, fr, q) < 1e-12);
  ChristoffelTable t = orthonormal_christoffel(g, fr, q);
  CHECK(t.at(2, 0, 1) == doctest::Approx(c / 2.0).epsilon(1e-11));
  CHECK(t.at(1, 0, 2) == doctest::Approx(-c / 2.0).epsilon(1e-11));
  CHECK(t.at(0, 2, 1) == doctest::Approx(c / 2.0).epsilon(1e-11));
  CHECK(t.at(1, 2, 0) == doctest::Approx(-c / 2.0).epsilon(1e-11));

  ChristoffelTable t2 = orthonormal_from_coordinate(g, fr, q);
  double dev = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dev = std::max(dev, std::fabs(t.at(k, i, j) - t2.at(k, i, j)));
  CHECK(dev < 1e-9);
}

TEST_CASE("gram-schmidt frame matches the adapted frame signs") {
  MetricField g = gcn_metric({2.0, 3});
  Frame fr = orthonormal_frame(g);
  CHECK(fr.eps[0] == -1);
  CHECK(fr.eps[1] == 1);
  CHECK(fr.eps[2] == 1);
  VecN q = vec3(0.4, -1.1, 0.7);
  CHECK(frame_residual(g, fr, q) < 1e-10);
}

TEST_CASE("riemann symmetries and first bianchi identity on a curved metric") {
  MetricField g = gcn_metric({1.5, 4});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 3; ++trial) {
    VecN x(4);
    for (int i = 0; i < 4; ++i) x[i] = u(rng);
    RiemannTensor r = riemann(g, x);
    double dev = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            dev = std::max(dev, std::fabs(r.at(i, j, k, l) + r.at(j, i, k, l)));
            dev = std::max(dev, std::fabs(r.at(i, j, k, l) + r.at(i, j, l, k)));
            dev = std::max(dev, std::fabs(r.at(i, j, k, l) - r.at(k, l, i, j)));
            dev = std::max(
                dev, std::fabs(r.at(i, j, k, l) + r.at(i, k, l, j) + r.at(i, l, j, k)));
          }
    CHECK(dev < 1e-9);
  }
}

TEST_CASE("weyl: dimension contract and conformal flatness in dimension 3") {
  MetricField g3 = gcn_metric({2.0, 3});
  VecN q = vec3(0.4, -1.1, 0.7);
  RiemannTensor w = weyl(g3, q);
  double wmax = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) wmax = std::max(wmax, std::fabs(w.at(i, j, k, l)));
  CHECK(wmax == 0.0);

  VecN p(2);
  p[0] = 0.9;
  p[1] = 0.3;
  CHECK_THROWS_AS((void)weyl(sphere2(), p), ContractError);
}

TEST_CASE("energy-momentum of flat space is pure cosmological term") {
  const double lambda = 0.3;
  MetricField g = minkowski(4);
  VecN x(4);
  x[1] = 0.5;
  EnergyMomentum em = energy_momentum(g, lambda, x);
  CHECK(em.n == 4);
  CHECK(em.lambda == lambda);
  // the einstein tensor vanishes, so T = lambda * g in coordinates
  CHECK(em.t(0, 0) == doctest::Approx(-lambda).epsilon(1e-10));
  for (int i = 1; i < 4; ++i) CHECK(em.t(i, i) == doctest::Approx(lambda).epsilon(1e-10));
  CHECK(std::fabs(em.t(0, 1)) < 1e-10);
}

TEST_CASE("causal classification in flat space") {
  MetricField g = minkowski(3);
  VecN x(3);
  VecN vt = vec3(1.0, 0.2, 0.0);
  VecN vs = vec3(0.2, 1.0, 0.0);
  VecN vn = vec3(1.0, 1.0, 0.0);
  VecN vz = vec3(0.0, 0.0, 0.0);
  CHECK(causal_classify(g, x, vt) == CausalClass::timelike);
  CHECK(causal_classify(g, x, vs) == CausalClass::spacelike);
  CHECK(causal_classify(g, x, vn) == CausalClass::lightlike);
  CHECK(causal_classify(g, x, vz) == CausalClass::zero);
}

TEST_CASE("geodesics: straight lines in flat space, conserved speed on curved") {
  MetricField flat = minkowski(3);
  VecN p = vec3(0.1, -0.2, 0.3);
  VecN v = vec3(1.0, 0.5, -0.25);
  GeodesicPath line = geodesic_integrate(flat, p, v, 2.0, 64);
  CHECK(line.times.back() == doctest::Approx(2.0).epsilon(1e-15));
  for (int i = 0; i < 3; ++i) {
    CHECK(line.positions.back()[i] == doctest::Approx(p[i] + 2.0 * v[i]).epsilon(1e-12));
    CHECK(line.velocities.back()[i] == doctest::Approx(v[i]).epsilon(1e-12));
  }

  MetricField g = gcn_metric({2.0, 3});
  GeodesicPath path = geodesic_integrate(g, vec3(0.4, -1.1, 0.7), v, 5.0, 400);
  auto speed = [&](const VecN& x, const VecN& w) {
    MatN m = eval_value(g, x);
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) acc += m(i, j) * w[i] * w[j];
    return acc;
  };
  const double q0 = speed(path.positions.front(), path.velocities.front());
  const double q1 = speed(path.positions.back(), path.velocities.back());
  CHECK(std::fabs(q1 - q0) < 1e-8);
}

TEST_CASE("curvature report bundles the frame-contracted pieces") {
  GcnParams gp{2.0, 3};
  MetricField g = gcn_metric(gp);
  Frame fr = gcn_frame(gp);
  VecN q = vec3(0.4, -1.1, 0.7);
  CurvatureReport rep = curvature_report(g, q, &fr, false, DerivMode::dual, 1e-5);
  const double want = gp.c * gp.c / 2.0;
  CHECK(rep.scalar == doctest::Approx(want).epsilon(1e-10));
  CHECK(rep.frame_ricci(0, 0) == doctest::Approx(want).epsilon(1e-10));
  CHECK(rep.frame_ricci(1, 1) == doctest::Approx(want).epsilon(1e-10));
  CHECK(rep.frame_ricci(2, 2) == doctest::Approx(want).epsilon(1e-10));
  CHECK(std::fabs(rep.frame_ricci(0, 1)) < 1e-10);
}
