// Plane distributions: graph maps, twistedness and its tensorial behavior,
// metric twist/shape pairings, orthogonal complements, the local twisting
// construction, and low-discrepancy sampling helpers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lorentz/distributions.hpp"
#include "lorentz/gcn.hpp"
#include "lorentz/sampling.hpp"

using namespace lorentz;

namespace {

VecN vec3(double a, double b, double c) {
  VecN v(3);
  v[0] = a;
  v[1] = b;
  v[2] = c;
  return v;
}

MetricField minkowski(int n) {
  return MetricField::make(n, 1, [n](const auto* y, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(y[0])>>;
    (void)y;
    for (int i = 0; i < n * n; ++i) out[i] = T(0.0);
    out[0] = T(-1.0);
    for (int i = 1; i < n; ++i) out[i * n + i] = T(1.0);
  });
}

}  // namespace

TEST_CASE("graph maps of planes over the spatial split") {
  Distribution w = make_distribution({coordinate_field(3, 1), coordinate_field(3, 2)});
  Distribution v = make_distribution({coordinate_field(3, 0)});
  VecN x = vec3(0.3, -0.7, 1.4);

  GraphMap gm = graph_map(w, w, v, x);
  CHECK(std::fabs(gm.matrix(0, 0)) < 1e-14);
  CHECK(std::fabs(gm.matrix(0, 1)) < 1e-14);

  // kernel of dx0 + x2 dx1: image of d1 is -x2 d0, image of d2 vanishes
  VectorField z1 = VectorField::make(3, [](const auto* y, auto* out) {
    out[0] = -y[2];
    out[1] = 1.0;
    out[2] = 0.0;
  });
  Distribution z = make_distribution({z1, coordinate_field(3, 2)});
  GraphMap gk = graph_map(z, w, v, x);
  CHECK(gk.w_rank == 2);
  CHECK(gk.v_rank == 1);
  CHECK(gk.images(0, 0) == doctest::Approx(-x[2]).epsilon(1e-12));
  CHECK(std::fabs(gk.images(1, 0)) < 1e-12);
  CHECK(gk.matrix(0, 0) == doctest::Approx(-x[2]).epsilon(1e-12));

  // Z containing V is not transverse
  Distribution zbad = make_distribution({coordinate_field(3, 0), coordinate_field(3, 2)});
  CHECK_THROWS_AS((void)graph_map(zbad, w, v, x), TransversalityError);
}

TEST_CASE("make_distribution contracts and basis degeneracy") {
  CHECK_THROWS_AS((void)make_distribution({}), ContractError);
  CHECK_THROWS_AS((void)make_distribution({coordinate_field(3, 0), coordinate_field(2, 0)}),
                  ContractError);
  Distribution dup = make_distribution({coordinate_field(3, 1), coordinate_field(3, 1)});
  CHECK_THROWS_AS((void)distribution_basis(dup, VecN(3)), DegeneracyError);
  Distribution ok = make_distribution({coordinate_field(3, 1), coordinate_field(3, 2)});
  MatN basis = distribution_basis(ok, VecN(3));
  CHECK(basis.rows == 2);
  CHECK(basis.cols == 3);
  CHECK(basis(0, 1) == 1.0);
  CHECK(basis(1, 2) == 1.0);
}

TEST_CASE("twistedness: zero for coordinate planes, c for the family frame") {
  Distribution h = make_distribution({coordinate_field(3, 1), coordinate_field(3, 2)});
  Distribution c0 = make_distribution({coordinate_field(3, 0)});
  VecN x = vec3(0.2, 0.5, -0.9);
  CHECK(twistedness(h, c0, x).max_abs() < 1e-14);

  const double c = 2.5;
  GcnParams params{c, 3};
  Frame frame = gcn_frame(params);
  Distribution hf = make_distribution({frame.fields[1], frame.fields[2]});
  Distribution cf = make_distribution({frame.fields[0]});
  TwistValue tf = twistedness(hf, cf, x);
  CHECK(tf.coeff(0, 0, 1) == doctest::Approx(c).epsilon(1e-12));
  CHECK(tf.coeff(0, 1, 0) == doctest::Approx(-c).epsilon(1e-12));  // antisymmetric
  VecN amb = tf.value_ambient(0, 1);
  CHECK(amb[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(amb[1]) + std::fabs(amb[2]) < 1e-13);

  // measured against span(d0) the coefficient is +1
  TwistValue tk = twistedness(hf, c0, x);
  CHECK(tk.coeff(0, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));

  // respanning multiplies the top coefficient by the determinant
  VectorField r1 = VectorField::make(3, [&frame](const auto* y, auto* out) {
    using S = std::decay_t<decltype(y[0])>;
    S e1[3], e2[3];
    eval(frame.fields[1], y, e1);
    eval(frame.fields[2], y, e2);
    S f = 1.0 + 0.3 * sin(y[1]);
    S g = 0.2 * y[2];
    for (int i = 0; i < 3; i++) out[i] = f * e1[i] + g * e2[i];
  });
  VectorField r2 = VectorField::make(3, [&frame](const auto* y, auto* out) {
    using S = std::decay_t<decltype(y[0])>;
    S e1[3], e2[3];
    eval(frame.fields[1], y, e1);
    eval(frame.fields[2], y, e2);
    S f = 0.1 * y[0];
    S g = 2.0 - 0.4 * cos(y[2]);
    for (int i = 0; i < 3; i++) out[i] = f * e1[i] + g * e2[i];
  });
  Distribution hr = make_distribution({r1, r2});
  TwistValue tr = twistedness(hr, cf, x);
  const double f1 = 1.0 + 0.3 * std::sin(x[1]);
  const double g1 = 0.2 * x[2];
  const double f2 = 0.1 * x[0];
  const double g2 = 2.0 - 0.4 * std::cos(x[2]);
  const double det = f1 * g2 - g1 * f2;
  CHECK(tr.coeff(0, 0, 1) == doctest::Approx(det * tf.coeff(0, 0, 1)).epsilon(1e-8));

  CHECK_THROWS_AS((void)twistedness(hf, hf, x), TransversalityError);
}

TEST_CASE("metric twist/shape pairing values and extension independence") {
  MetricField mink = minkowski(3);
  Distribution u = make_distribution({coordinate_field(3, 1), coordinate_field(3, 2)});
  VecN x = vec3(0.0, 0.4, -0.2);
  VecN uv = vec3(0.0, 1.0, 0.0);
  VecN vv = vec3(0.0, 0.0, 1.0);
  VecN w = vec3(1.0, 0.0, 0.0);
  double tw = 1.0, sw = 1.0;
  tw_sw_metric(mink, u, x, uv, vv, w, &tw, &sw);
  CHECK(std::fabs(tw) < 1e-14);
  CHECK(std::fabs(sw) < 1e-14);

  const double c = 1.8;
  GcnParams params{c, 3};
  MetricField g = gcn_metric(params);
  Frame frame = gcn_frame(params);
  Distribution h = make_distribution({frame.fields[1], frame.fields[2]});
  VecN uval = eval_value(frame.fields[1], x);
  VecN vval = eval_value(frame.fields[2], x);
  VecN wval = eval_value(frame.fields[0], x);
  tw_sw_metric(g, h, x, uval, vval, wval, &tw, &sw);
  CHECK(tw == doctest::Approx(-c).epsilon(1e-12));
  CHECK(std::fabs(sw) < 1e-12);

  // two extensions of the same pointwise vectors agree
  double twa = 0.0, swa = 0.0, twb = 0.0, swb = 0.0;
  tw_sw_metric_fields(g, frame.fields[1], frame.fields[2], x, wval, &twa, &swa);
  VectorField u_alt = VectorField::make(3, [&frame, x](const auto* y, auto* out) {
    using S = std::decay_t<decltype(y[0])>;
    S e1[3], e2[3];
    eval(frame.fields[1], y, e1);
    eval(frame.fields[2], y, e2);
    S coeff = 0.7 * (y[1] - x[1]);
    for (int i = 0; i < 3; i++) out[i] = e1[i] + coeff * e2[i];
  });
  VectorField v_alt = VectorField::make(3, [&frame, x](const auto* y, auto* out) {
    using S = std::decay_t<decltype(y[0])>;
    S e1[3], e2[3];
    eval(frame.fields[1], y, e1);
    eval(frame.fields[2], y, e2);
    S coeff = 1.3 * (y[0] - x[0]);
    for (int i = 0; i < 3; i++) out[i] = e2[i] + coeff * e1[i];
  });
  tw_sw_metric_fields(g, u_alt, v_alt, x, wval, &twb, &swb);
  CHECK(std::fabs(twa - twb) < 1e-9);
  CHECK(std::fabs(swa - swb) < 1e-9);
  CHECK(std::fabs(twa - tw) < 1e-9);

  VecN wbad = vec3(1.0, 0.5, 0.0);
  CHECK_THROWS_AS(tw_sw_metric(g, h, x, uval, vval, wbad, &tw, &sw), ContractError);
  VecN ubad = vec3(1.0, 0.0, 0.0);
  CHECK_THROWS_AS(tw_sw_metric(g, h, x, ubad, vval, wval, &tw, &sw), ContractError);
}

TEST_CASE("orthogonal complements") {
  MetricField mink = minkowski(4);
  Distribution space = make_distribution(
      {coordinate_field(4, 1), coordinate_field(4, 2), coordinate_field(4, 3)});
  VecN x4(4);
  x4[0] = 0.1;
  x4[1] = 0.2;
  x4[2] = 0.3;
  x4[3] = 0.4;
  MatN comp = orthogonal_complement(mink, space, x4);
  CHECK(comp.rows == 1);
  CHECK(std::fabs(std::fabs(comp(0, 0)) - 1.0) < 1e-12);
  CHECK(std::fabs(comp(0, 1)) + std::fabs(comp(0, 2)) + std::fabs(comp(0, 3)) < 1e-12);

  GcnParams params{2.0, 3};
  MetricField g = gcn_metric(params);
  Frame frame = gcn_frame(params);
  Distribution h = make_distribution({frame.fields[1], frame.fields[2]});
  MatN compg = orthogonal_complement(g, h, vec3(0.3, -0.2, 0.8));
  CHECK(compg.rows == 1);
  CHECK(std::fabs(std::fabs(compg(0, 0)) - 1.0) < 1e-12);
  CHECK(std::fabs(compg(0, 1)) + std::fabs(compg(0, 2)) < 1e-12);

  VectorField null_dir = VectorField::make(4, [](const auto* y, auto* out) {
    out[0] = 1.0 + 0.0 * y[0];
    out[1] = 1.0;
    out[2] = 0.0;
    out[3] = 0.0;
  });
  Distribution null_plane = make_distribution({null_dir});
  CHECK_THROWS_AS((void)orthogonal_complement(mink, null_plane, x4), DegeneracyError);
}

TEST_CASE("local twisting adds exactly the requested bracket defect") {
  MetricField mink = minkowski(3);
  Distribution h = make_distribution({coordinate_field(3, 1), coordinate_field(3, 2)});
  VecN x = vec3(0.5, -0.3, 0.2);

  TwistResult r = twist_locally(mink, h, x, 0.1);
  CHECK(r.twist_axis == 0);
  TwistValue tv = twistedness(r.twisted, r.complement, x);
  VecN amb = tv.value_ambient(0, 1);
  CHECK(amb[0] == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(std::fabs(amb[1]) + std::fabs(amb[2]) < 1e-11);
  CHECK(r.spacelike_threshold > 1.0);
  CHECK(r.spacelike_threshold < 3.0);

  // unchanged outside the bump support
  VecN far = vec3(2.0, -0.3, 0.2);
  VecN ffar = eval_value(r.twisted.spans[0], far);
  CHECK(ffar[0] == 0.0);
  CHECK(ffar[1] == 1.0);
  CHECK(ffar[2] == 0.0);

  // zero coefficient leaves the plane integrable
  TwistResult r0 = twist_locally(mink, h, x, 0.0);
  CHECK(twistedness(r0.twisted, r0.complement, x).max_abs() < 1e-14);

  // on an already-twisted plane the coefficient adds on top
  GcnParams params{1.3, 3};
  MetricField g = gcn_metric(params);
  Frame frame = gcn_frame(params);
  Distribution hf = make_distribution({frame.fields[1], frame.fields[2]});
  TwistResult rf = twist_locally(g, hf, VecN(3), 0.25);
  TwistValue tvf = twistedness(rf.twisted, rf.complement, VecN(3));
  CHECK(tvf.value_ambient(0, 1)[0] == doctest::Approx(1.0 + 0.25).epsilon(1e-9));
  CHECK(rf.spacelike_threshold > 0.0);

  MetricField riem = MetricField::make(3, 0, [](const auto* y, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(y[0])>>;
    (void)y;
    for (int i = 0; i < 9; ++i) out[i] = T(0.0);
    out[0] = T(1.0);
    out[4] = T(1.0);
    out[8] = T(1.0);
  });
  CHECK_THROWS_AS((void)twist_locally(riem, h, x, 0.1), ContractError);
  Distribution line = make_distribution({coordinate_field(3, 1)});
  CHECK_THROWS_AS((void)twist_locally(mink, line, x, 0.1), ContractError);
  Distribution mixed = make_distribution({coordinate_field(3, 0), coordinate_field(3, 1)});
  CHECK_THROWS_AS((void)twist_locally(mink, mixed, x, 0.1), ContractError);
}

TEST_CASE("low-discrepancy sampling helpers are deterministic") {
  CHECK(radical_inverse(2, 1) == 0.5);
  CHECK(radical_inverse(2, 2) == 0.25);
  CHECK(radical_inverse(2, 3) == 0.75);
  CHECK(radical_inverse(3, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  for (int d : {2, 3, 5}) {
    for (long long i = 0; i < 32; ++i) {
      VecN s = sphere_point(d, i);
      double norm = 0.0;
      for (int k = 0; k < d; ++k) norm += s[k] * s[k];
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
      VecN b = ball_point(d, i);
      double bn = 0.0;
      for (int k = 0; k < d; ++k) bn += b[k] * b[k];
      CHECK(bn <= 1.0 + 1e-12);
    }
  }

  // same index, same point
  VecN a = sphere_point(4, 17);
  VecN b = sphere_point(4, 17);
  for (int k = 0; k < 4; ++k) CHECK(a[k] == b[k]);
}
