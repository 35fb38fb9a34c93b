// Anisotropic stretching along a timelike distribution: the switch metric,
// stretched metrics and bar maps, adapted frames, the stretched christoffel
// table against brute force, skew normal forms, the b/beta pairings, niceness
// certificates, ricci asymptotics, and the operator-norm bound.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "lorentz/curvature.hpp"
#include "lorentz/distributions.hpp"
#include "lorentz/fields.hpp"
#include "lorentz/gcn.hpp"
#include "lorentz/stretch.hpp"

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
    using S = std::remove_cv_t<std::remove_reference_t<decltype(*out)>>;
    (void)y;
    for (int i = 0; i < n * n; i++) out[i] = S(0.0);
    out[0] = S(-1.0);
    for (int i = 1; i < n; i++) out[i * n + i] = S(1.0);
  });
}

// second adapted frame field of the family, d1 - x2 d0
VectorField e1_field(int n) {
  return VectorField::make(n, [n](const auto* y, auto* out) {
    using S = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
    for (int i = 0; i < n; i++) out[i] = S(0.0);
    out[0] = S(0.0) - y[2];
    out[1] = S(1.0);
  });
}

// analytic metric G = A^T D A with A = I + small sin perturbation; D carries
// q minus signs, so the index is q everywhere and the first q pulled-back
// axes span a timelike plane.
struct CongruenceMetric {
  int n;
  int q;
  double amp;
  double phase[8][8];

  MetricField metric() const {
    const CongruenceMetric self = *this;
    return MetricField::make(n, q, [self](const auto* y, auto* out) {
      using S = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
      const int n = self.n;
      S a[64];
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
          S base = S(i == j ? 1.0 : 0.0);
          a[i * n + j] = base + sin(y[(i + j) % n] + self.phase[i][j]) * self.amp;
        }
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
          S acc(0.0);
          for (int k = 0; k < n; k++) {
            const double dk = (k < self.q) ? -1.0 : 1.0;
            acc = acc + a[k * n + i] * a[k * n + j] * dk;
          }
          out[i * n + j] = acc;
        }
    });
  }

  VectorField axis_pullback(int axis) const {
    const CongruenceMetric self = *this;
    return VectorField::make(n, [self, axis](const auto* y, auto* out) {
      using S = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
      const int n = self.n;
      S a[64];
      S inv[64];
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
          S base = S(i == j ? 1.0 : 0.0);
          a[i * n + j] = base + sin(y[(i + j) % n] + self.phase[i][j]) * self.amp;
        }
      invert_matrix(n, a, inv);
      for (int i = 0; i < n; i++) out[i] = inv[i * n + axis];
    });
  }
};

std::mt19937& test_rng() {
  static std::mt19937 rng(20260816u);
  return rng;
}

double unif() {
  static std::uniform_real_distribution<double> u(-2.0, 2.0);
  return u(test_rng());
}

}  // namespace

TEST_CASE("switch metric: flat case is euclidean, family case pairs the frame") {
  MetricField mink = minkowski(3);
  StretchSpec spec{mink, make_distribution({coordinate_field(3, 0)}), constant_scalar(3, 1.0)};
  double dev = 0.0;
  for (int t = 0; t < 20; t++) {
    VecN x = vec3(unif(), unif(), unif());
    MatN h = switch_metric(spec, x);
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++) dev = std::max(dev, std::fabs(h(i, j) - (i == j ? 1.0 : 0.0)));
  }
  CHECK(dev < 1e-14);

  const double c = 2.0;
  MetricField gc = gcn_metric({c, 3});
  Frame fr = seeded_frame(gc, {coordinate_field(3, 0)}, VecN(3));
  StretchSpec spec_c{gc, make_distribution({coordinate_field(3, 0)}), constant_scalar(3, 1.0)};
  double fdev = 0.0;
  double posdev = 1e300;
  for (int t = 0; t < 40; t++) {
    VecN x = vec3(unif(), unif(), unif());
    MatN h = switch_metric(spec_c, x);
    for (int a = 0; a < 3; a++)
      for (int b = 0; b < 3; b++) {
        VecN ea = eval_value(fr.fields[a], x);
        VecN eb = eval_value(fr.fields[b], x);
        double acc = 0.0;
        for (int i = 0; i < 3; i++)
          for (int j = 0; j < 3; j++) acc += ea[i] * h(i, j) * eb[j];
        fdev = std::max(fdev, std::fabs(acc - (a == b ? 1.0 : 0.0)));
      }
    double vals[kMaxDim], vecs[kMaxDim * kMaxDim];
    sym_eigen(3, h.a.data(), vals, vecs);
    posdev = std::min(posdev, vals[0]);
  }
  CHECK(fdev < 1e-10);
  CHECK(posdev > 0.0);
}

TEST_CASE("stretch reproduces the family and the bar map is an isometry") {
  const double c = 3.0;
  for (int n : {3, 4}) {
    MetricField g1 = gcn_metric({1.0, n});
    MetricField gc = gcn_metric({c, n});
    std::vector<VectorField> v0 = {coordinate_field(n, 0)};
    StretchSpec spec{g1, make_distribution(v0), constant_scalar(n, 1.0 / c)};
    StretchSpec ident{g1, make_distribution(v0), constant_scalar(n, 1.0)};
    MetricField gbar = stretch(spec);
    MetricField gsame = stretch(ident);
    double dev = 0.0;
    double idev = 0.0;
    for (int t = 0; t < 40; t++) {
      VecN x(n);
      for (int i = 0; i < n; i++) x[i] = unif();
      MatN mb = eval_value(gbar, x);
      MatN mc = eval_value(gc, x);
      MatN m1 = eval_value(g1, x);
      MatN ms = eval_value(gsame, x);
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
          dev = std::max(dev, std::fabs(mb(i, j) - mc(i, j)));
          idev = std::max(idev, std::fabs(ms(i, j) - m1(i, j)));
        }
    }
    CHECK(dev < 1e-12);
    CHECK(idev == 0.0);
  }

  MetricField g1 = gcn_metric({1.0, 3});
  StretchSpec spec{g1, make_distribution({coordinate_field(3, 0)}), constant_scalar(3, 1.0 / c)};
  MetricField gbar = stretch(spec);
  double bdev = 0.0;
  for (int t = 0; t < 40; t++) {
    VecN x = vec3(unif(), unif(), unif());
    VecN u = vec3(unif(), unif(), unif());
    VecN ub = bar_map(spec, x, u);
    MatN m1 = eval_value(g1, x);
    MatN mb = eval_value(gbar, x);
    double gu = 0.0, gb = 0.0;
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++) {
        gu += u[i] * m1(i, j) * u[j];
        gb += ub[i] * mb(i, j) * ub[j];
      }
    bdev = std::max(bdev, std::fabs(gu - gb));
  }
  CHECK(bdev < 1e-12);
}

TEST_CASE("stretch spec contracts") {
  MetricField g1 = gcn_metric({1.0, 3});
  StretchSpec spacelike_v{g1, make_distribution({coordinate_field(3, 1)}),
                          constant_scalar(3, 1.0)};
  CHECK_THROWS_AS(validate_stretch_spec(spacelike_v, VecN(3)), ContractError);

  StretchSpec bad_f{g1, make_distribution({coordinate_field(3, 0)}), constant_scalar(3, -0.5)};
  CHECK_THROWS_AS((void)eval_value(stretch(bad_f), VecN(3)), ContractError);

  StretchSpec bad_rank{g1,
                       make_distribution({coordinate_field(3, 0), coordinate_field(3, 1)}),
                       constant_scalar(3, 1.0)};
  CHECK_THROWS_AS((void)stretch(bad_rank), ContractError);
}

TEST_CASE("seeded and barred frames") {
  const double c = 2.0;
  MetricField gc = gcn_metric({c, 3});
  Frame fr = seeded_frame(gc, {coordinate_field(3, 0)}, VecN(3));
  CHECK(fr.eps[0] == -1);
  CHECK(fr.eps[1] == 1);
  CHECK(fr.eps[2] == 1);
  double dev = 0.0;
  for (int t = 0; t < 20; t++) {
    VecN x = vec3(unif(), unif(), unif());
    VecN e0 = eval_value(fr.fields[0], x);
    VecN e1 = eval_value(fr.fields[1], x);
    VecN e2 = eval_value(fr.fields[2], x);
    dev = std::max(dev, std::fabs(e0[0] - 1.0 / c) + std::fabs(e0[1]) + std::fabs(e0[2]));
    dev = std::max(dev, std::fabs(e1[0] + x[2]) + std::fabs(e1[1] - 1.0) + std::fabs(e1[2]));
    dev = std::max(dev, std::fabs(e2[0]) + std::fabs(e2[1]) + std::fabs(e2[2] - 1.0));
    dev = std::max(dev, frame_residual(gc, fr, x));
  }
  CHECK(dev < 1e-12);

  MetricField g1 = gcn_metric({1.0, 3});
  StretchSpec spec{g1, make_distribution({coordinate_field(3, 0)}), constant_scalar(3, 1.0 / c)};
  Frame base = seeded_frame(g1, {coordinate_field(3, 0)}, VecN(3));
  Frame barred = barred_frame(spec, base);
  MetricField gbar = stretch(spec);
  double bdev = 0.0;
  for (int t = 0; t < 20; t++) {
    VecN x = vec3(unif(), unif(), unif());
    bdev = std::max(bdev, frame_residual(gbar, barred, x));
  }
  CHECK(bdev < 1e-12);
}

TEST_CASE("stretched christoffel table: identity, family entry, brute force") {
  // f = 1, df = 0 leaves a random metric-compatible table untouched
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  ChristoffelTable gam;
  gam.n = 3;
  gam.flavor = ChristoffelFlavor::orthonormal;
  for (int k = 0; k < 3; k++) gam.entries[k] = MatN(3, 3);
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++)
      for (int k = j + 1; k < 3; k++) {
        const double g0 = unit(test_rng());
        gam.at(k, i, j) = g0;
        gam.at(j, i, k) = -g0;
      }
  int eps3[3] = {-1, 1, 1};
  VecN df0(3);
  ChristoffelTable same = stretched_christoffel_table(gam, 1, 1.0, df0, eps3);
  double dev = 0.0;
  for (int k = 0; k < 3; k++)
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++)
        dev = std::max(dev, std::fabs(same.at(k, i, j) - gam.at(k, i, j)));
  CHECK(dev == 0.0);

  // the c = 1 table stretched by 1/c reproduces the g^c table, entrywise
  const double c = 2.5;
  MetricField g1 = gcn_metric({1.0, 3});
  Frame base = seeded_frame(g1, {coordinate_field(3, 0)}, VecN(3));
  VecN x = vec3(0.3, -0.7, 0.4);
  ChristoffelTable g1tab = orthonormal_christoffel(g1, base, x);
  ChristoffelTable bar = stretched_christoffel_table(g1tab, 1, 1.0 / c, df0, eps3);
  CHECK(bar.at(2, 0, 1) == doctest::Approx(c / 2.0).epsilon(1e-10));
  MetricField gc = gcn_metric({c, 3});
  Frame cfr = seeded_frame(gc, {coordinate_field(3, 0)}, VecN(3));
  ChristoffelTable ctab = orthonormal_christoffel(gc, cfr, x);
  double tdev = 0.0;
  for (int k = 0; k < 3; k++)
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++)
        tdev = std::max(tdev, std::fabs(bar.at(k, i, j) - ctab.at(k, i, j)));
  CHECK(tdev < 1e-10);

  // brute-force oracle on random analytic metrics with a nonconstant factor
  for (int q : {1, 2}) {
    const int n = (q == 1) ? 3 : 4;
    double worst = 0.0;
    for (int trial = 0; trial < 4; trial++) {
      CongruenceMetric cm;
      cm.n = n;
      cm.q = q;
      cm.amp = 0.08;
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) cm.phase[i][j] = unif();
      MetricField g = cm.metric();
      std::vector<VectorField> seeds;
      for (int a = 0; a < q; a++) seeds.push_back(cm.axis_pullback(a));
      Distribution v = make_distribution(seeds);
      ScalarField f = ScalarField::make(n, [](const auto* y) {
        using S = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
        return S(1.0) + sin(y[1]) * 0.1;
      });
      StretchSpec spec{g, v, f};
      VecN xx(n);
      for (int i = 0; i < n; i++) xx[i] = 0.5 * unif();
      Frame frame = seeded_frame(g, seeds, xx);
      ChristoffelTable gtab = orthonormal_christoffel(g, frame, xx);
      ScalarJet fj = evaluate_jet(f, xx, 1);
      VecN df(n);
      for (int a = 0; a < n; a++) {
        VecN ea = eval_value(frame.fields[a], xx);
        double acc = 0.0;
        for (int i = 0; i < n; i++) acc += fj.grad[i] * ea[i];
        df[a] = acc;
      }
      ChristoffelTable got =
          stretched_christoffel_table(gtab, q, eval_value(f, xx), df, frame.eps.data());
      MetricField gbar = stretch(spec);
      Frame barred = barred_frame(spec, frame);
      ChristoffelTable want = orthonormal_christoffel(gbar, barred, xx);
      for (int k = 0; k < n; k++)
        for (int i = 0; i < n; i++)
          for (int j = 0; j < n; j++)
            worst = std::max(worst, std::fabs(got.at(k, i, j) - want.at(k, i, j)));
    }
    CHECK(worst < 1e-7);
  }

  ChristoffelTable coord = gam;
  coord.flavor = ChristoffelFlavor::coordinate;
  CHECK_THROWS_AS((void)stretched_christoffel_table(coord, 1, 1.0, df0, eps3), ContractError);
  CHECK_THROWS_AS((void)stretched_christoffel_table(gam, 4, 1.0, df0, eps3), ContractError);
}

TEST_CASE("skew normal form") {
  MatN zero(3, 3);
  SkewNormalForm nf0 = skew_normal_form(zero);
  CHECK(nf0.r == 1);
  CHECK(nf0.lambda[0] == 0.0);

  MatN a2(2, 2);
  a2(0, 1) = -1.7;
  a2(1, 0) = 1.7;
  SkewNormalForm nf2 = skew_normal_form(a2);
  CHECK(nf2.lambda[0] == doctest::Approx(1.7).epsilon(1e-12));

  double worst = 0.0;
  for (int trial = 0; trial < 20; trial++) {
    MatN a4(4, 4);
    for (int i = 0; i < 4; i++)
      for (int j = i + 1; j < 4; j++) {
        a4(i, j) = unif();
        a4(j, i) = -a4(i, j);
      }
    SkewNormalForm nf = skew_normal_form(a4);
    double fro = 0.0;
    for (int i = 0; i < 4; i++)
      for (int j = 0; j < 4; j++) fro += a4(i, j) * a4(i, j);
    const double pf = a4(0, 1) * a4(2, 3) - a4(0, 2) * a4(1, 3) + a4(0, 3) * a4(1, 2);
    const double l1 = nf.lambda[0];
    const double l2 = nf.lambda[1];
    worst = std::max(worst, std::fabs(l1 * l1 + l2 * l2 - 0.5 * fro));
    worst = std::max(worst, std::fabs(l1 * l2 - std::fabs(pf)));
    if (l2 > l1 + 1e-14) worst = std::max(worst, 1.0);
    for (int i = 0; i < 4; i++)
      for (int j = 0; j < 4; j++) {
        double acc = 0.0;
        for (int k = 0; k < 4; k++) acc += nf.basis(i, k) * nf.basis(j, k);
        worst = std::max(worst, std::fabs(acc - (i == j ? 1.0 : 0.0)));
      }
  }
  CHECK(worst < 1e-9);

  MatN a5(5, 5);
  a5(0, 3) = 2.0;
  a5(3, 0) = -2.0;
  SkewNormalForm nf5 = skew_normal_form(a5);
  CHECK(nf5.r == 2);
  CHECK(nf5.lambda[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(nf5.lambda[1] == 0.0);

  MatN notskew(3, 3);
  notskew(0, 1) = 1.0;
  CHECK_THROWS_AS((void)skew_normal_form(notskew), ContractError);
}

TEST_CASE("b/beta pairings: flat zero, family values, contract checks") {
  MetricField mink = minkowski(3);
  Distribution hflat = make_distribution({coordinate_field(3, 1), coordinate_field(3, 2)});
  BBeta flat = b_beta(mink, hflat, vec3(0.1, -0.4, 0.9));
  double zdev = 0.0;
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++)
      zdev = std::max(zdev, std::fabs(flat.b(i, j)) + std::fabs(flat.beta(i, j)));
  CHECK(zdev == 0.0);

  const double c = 2.0;
  MetricField gc = gcn_metric({c, 3});
  Distribution hc = make_distribution({e1_field(3), coordinate_field(3, 2)});
  double worst = 0.0;
  for (int t = 0; t < 10; t++) {
    VecN x = vec3(unif(), unif(), unif());
    BBeta bb = b_beta(gc, hc, x);
    worst = std::max(worst, std::fabs(std::fabs(bb.twist(0, 1)) - c));
    for (int a = 0; a < 3; a++)
      for (int b = 0; b < 3; b++) {
        const double want_b = (a == b) ? 2.0 * c * c : 0.0;
        double want_t = 0.0;
        if (a == b) want_t = (a == 0) ? 3.0 * c * c : c * c;
        worst = std::max(worst, std::fabs(bb.b(a, b) - want_b));
        worst = std::max(worst, std::fabs(bb.beta(a, b) - want_t));
      }
    const double tr = -bb.b(0, 0) + bb.b(1, 1) + bb.b(2, 2);
    worst = std::max(worst, std::fabs(tr - 2.0 * c * c));
    worst = std::max(worst, std::fabs(bb.lambda[0] - c));
    for (int a = 0; a < 3; a++)
      for (int b = 0; b < 3; b++) {
        double acc = 0.0;
        for (int i = 0; i < 3; i++)
          for (int j = 0; j < 3; j++)
            acc += bb.frame_rows(a, i) * bb.b_coord(i, j) * bb.frame_rows(b, j);
        worst = std::max(worst, std::fabs(acc - bb.b(a, b)));
      }
  }
  CHECK(worst < 1e-9);

  MetricField flat3 = MetricField::make(3, 0, [](const auto* y, auto* out) {
    using S = std::remove_cv_t<std::remove_reference_t<decltype(*out)>>;
    (void)y;
    for (int i = 0; i < 9; i++) out[i] = S(0.0);
    out[0] = out[4] = out[8] = S(1.0);
  });
  CHECK_THROWS_AS((void)b_beta(flat3, hflat, VecN(3)), UnsupportedIndexError);
  CHECK_THROWS_AS((void)b_beta(mink, make_distribution({coordinate_field(3, 1)}), VecN(3)),
                  ContractError);
  CHECK_THROWS_AS(
      (void)b_beta(mink, make_distribution({coordinate_field(3, 0), coordinate_field(3, 1)}),
                   VecN(3)),
      ContractError);
}

TEST_CASE("niceness certificate") {
  const double c = 2.0;
  MetricField gc = gcn_metric({c, 3});
  Distribution hc = make_distribution({e1_field(3), coordinate_field(3, 2)});
  std::vector<VecN> pts;
  for (int t = 0; t < 5; t++) pts.push_back(vec3(unif(), unif(), unif()));
  NicenessCertificate cert = niceness_certificate(gc, hc, pts, 64);
  CHECK(cert.weak_nice);
  CHECK(cert.semidom_nice);
  CHECK(cert.causal_nice);
  CHECK(cert.dominant_nice);
  CHECK(cert.c_weak == doctest::Approx(2.0 * c * c).epsilon(1e-9));
  for (const NicenessSample& s : cert.samples) {
    CHECK(s.min_b == doctest::Approx(2.0 * c * c).epsilon(1e-9));
    CHECK(s.slack_b_bound >= -1e-9);
    CHECK(s.slack_beta_bound >= -1e-9);
    CHECK(s.slack_momentum_bound >= -1e-9);
  }

  MetricField mink = minkowski(3);
  Distribution hflat = make_distribution({coordinate_field(3, 1), coordinate_field(3, 2)});
  NicenessCertificate flat = niceness_certificate(mink, hflat, {VecN(3)}, 16);
  CHECK_FALSE(flat.weak_nice);
  CHECK_FALSE(flat.semidom_nice);
  CHECK_FALSE(flat.causal_nice);
  CHECK_FALSE(flat.dominant_nice);
  CHECK(flat.c_weak == -std::numeric_limits<double>::infinity());

  CHECK_THROWS_AS((void)niceness_certificate(gc, hc, {}, 16), ContractError);
}

TEST_CASE("ricci asymptotics under shrinking stretch factors") {
  MetricField g1 = gcn_metric({1.0, 3});
  Distribution h = make_distribution({e1_field(3), coordinate_field(3, 2)});
  Distribution v = make_distribution({coordinate_field(3, 0)});
  std::vector<double> eps_list = {0.1, 0.05, 0.02, 0.01};
  VecN x = vec3(0.4, -0.8, 0.6);
  StretchAsymptotics asym = ricci_asymptotics(g1, h, v, x, eps_list);
  double worst = 0.0;
  for (const StretchAsymptoticsRow& row : asym.rows) {
    worst = std::max(worst, row.r_hh);
    worst = std::max(worst, row.r_vv);
    worst = std::max(worst, row.r_mix);
  }
  CHECK(worst < 1e-9);  // the family is exactly the b/(4 eps^2) profile
  double bdev = 0.0;
  for (int a = 0; a < 3; a++)
    for (int b = 0; b < 3; b++)
      bdev = std::max(bdev, std::fabs(asym.b(a, b) - (a == b ? 2.0 : 0.0)));
  CHECK(bdev < 1e-9);
  CHECK(asym.hh_bounded);
  CHECK(asym.vv_bounded);
  CHECK(asym.mix_bounded);

  // conformal perturbation: residuals no longer vanish but stay bounded
  MetricField gp = MetricField::make(3, 1, [](const auto* y, auto* out) {
    using S = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
    S w = S(1.0) + sin(y[1] + y[2]) * 0.05;
    for (int i = 0; i < 9; i++) out[i] = S(0.0);
    out[0] = S(-1.0) * w;
    out[1] = out[3] = (S(0.0) - y[2]) * w;
    out[4] = (S(1.0) - y[2] * y[2]) * w;
    out[8] = w;
  });
  StretchAsymptotics pasym = ricci_asymptotics(gp, h, v, x, eps_list);
  CHECK(pasym.hh_bounded);
  CHECK(pasym.vv_bounded);
  CHECK(pasym.mix_bounded);

  CHECK_THROWS_AS((void)ricci_asymptotics(g1, h, v, x, {0.01, 0.1}), ContractError);
  CHECK_THROWS_AS((void)ricci_asymptotics(g1, h, v, x, {0.1, 0.0}), ContractError);
}

TEST_CASE("operator-norm bound for planes against the stretched cone") {
  MetricField mink = minkowski(3);
  Distribution v = make_distribution({coordinate_field(3, 0)});
  Distribution h = make_distribution({coordinate_field(3, 1), coordinate_field(3, 2)});

  KeyLemmaResult trivial = key_lemma_bound(mink, v, h, 0.7, h, VecN(3));
  CHECK(trivial.bound_holds);
  CHECK_FALSE(trivial.contains_timelike);
  CHECK(std::fabs(trivial.operator_norm) < 1e-12);

  auto slanted = [&](double a) {
    VecN w1(3);
    w1[0] = a;
    w1[1] = 1.0;
    return make_distribution({constant_vector(3, w1), coordinate_field(3, 2)});
  };
  for (double f : {1.0, 0.1}) {
    KeyLemmaResult inside = key_lemma_bound(mink, v, h, f, slanted(0.5 * f), VecN(3));
    KeyLemmaResult outside = key_lemma_bound(mink, v, h, f, slanted(2.0 * f), VecN(3));
    CHECK(inside.bound_holds);
    CHECK_FALSE(inside.contains_timelike);
    CHECK(inside.operator_norm == doctest::Approx(0.5 * f).epsilon(1e-12));
    CHECK(outside.contains_timelike);
    CHECK_FALSE(outside.bound_holds);
    CHECK(outside.operator_norm == doctest::Approx(2.0 * f).epsilon(1e-12));
  }

  // family planes with a prescribed slope: norm is sqrt(a1^2 + a2^2) and the
  // timelike dichotomy flips exactly at slope = f
  const double c = 2.0;
  MetricField gc = gcn_metric({c, 3});
  Distribution vc = make_distribution({coordinate_field(3, 0)});
  Distribution hc = make_distribution({e1_field(3), coordinate_field(3, 2)});
  int held = 0, timelike = 0;
  double worst_slack = 1e300, worst_witness = -1e300, worst_norm = 0.0;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int t = 0; t < 120; t++) {
    VecN x = vec3(unif(), unif(), unif());
    const double f = (t % 2 == 0) ? 1.0 : 0.25;
    const double s = std::fabs(unit(test_rng())) * 2.0 * f;
    if (std::fabs(s - f) < 1e-6) continue;
    const double th = angle(test_rng());
    const double a1 = s * std::cos(th);
    const double a2 = s * std::sin(th);
    VecN e0 = vec3(1.0 / c, 0.0, 0.0);
    VecN e1 = vec3(-x[2], 1.0, 0.0);
    VecN e2 = vec3(0.0, 0.0, 1.0);
    VecN w1(3), w2(3);
    for (int i = 0; i < 3; i++) {
      w1[i] = e1[i] + a1 * e0[i];
      w2[i] = e2[i] + a2 * e0[i];
    }
    Distribution p = make_distribution({constant_vector(3, w1), constant_vector(3, w2)});
    KeyLemmaResult res = key_lemma_bound(gc, vc, hc, f, p, x);
    worst_norm = std::max(worst_norm, std::fabs(res.operator_norm - s));
    if (res.contains_timelike != (s > f)) worst_norm = std::max(worst_norm, 1.0);
    if (res.contains_timelike) {
      timelike++;
      StretchSpec spec{gc, vc, constant_scalar(3, f)};
      MatN gbar = eval_value(stretch(spec), x);
      double q = 0.0;
      for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) q += res.witness[i] * gbar(i, j) * res.witness[j];
      worst_witness = std::max(worst_witness, q);
    } else {
      held++;
      worst_slack = std::min(worst_slack, res.slack);
    }
  }
  CHECK(held > 20);
  CHECK(timelike > 20);
  CHECK(worst_slack >= -1e-12);
  CHECK(worst_witness < 0.0);  // witnesses really are stretched-timelike
  CHECK(worst_norm < 1e-9);

  // P containing the V direction cannot be complementary
  VecN w1(3);
  w1[0] = 1.0;
  Distribution pbad = make_distribution({constant_vector(3, w1), coordinate_field(3, 1)});
  CHECK_THROWS_AS((void)key_lemma_bound(mink, v, h, 1.0, pbad, VecN(3)), TransversalityError);
}
