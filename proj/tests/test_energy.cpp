// Energy conditions: exact diagonal margins, the cone sampler against the
// exact rule, family-specific verdicts and witnesses, strictness at the
// boundary, region sweeps, and input contracts.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "lorentz/energy.hpp"
#include "lorentz/gcn.hpp"

using namespace lorentz;

namespace {

VecN vecn(std::initializer_list<double> xs) {
  VecN v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
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

TEST_CASE("flat space: non-strict conditions hold at margin zero, strict fail") {
  SamplerConfig cfg;
  MetricField g = minkowski(4);
  VecN x = vecn({0.3, -0.2, 0.9, 0.1});
  ConditionVerdict w = check_condition(g, 0.0, x, EnergyCondition::weak, cfg);
  ConditionVerdict sd = check_condition(g, 0.0, x, EnergyCondition::semi_dominant, cfg);
  ConditionVerdict d = check_condition(g, 0.0, x, EnergyCondition::dominant, cfg);
  ConditionVerdict sw = check_condition(g, 0.0, x, EnergyCondition::strict_weak, cfg);
  ConditionVerdict st = check_condition(g, 0.0, x, EnergyCondition::strict_timelike_convergence, cfg);
  CHECK(w.holds);
  CHECK(std::fabs(w.margin) < 1e-12);
  CHECK(sd.holds);
  CHECK(std::fabs(sd.margin) < 1e-12);
  CHECK(d.holds);
  CHECK_FALSE(sw.holds);
  CHECK_FALSE(st.holds);
}

TEST_CASE("family verdicts across the cosmological-constant range") {
  SamplerConfig cfg;
  GcnParams gp{2.0, 4};
  MetricField g = gcn_metric(gp);
  VecN x = vecn({0.4, -1.2, 0.7, 0.3});
  const double c2 = gp.c * gp.c;

  ConditionVerdict dom = check_condition(g, c2 / 4.0, x, EnergyCondition::dominant, cfg);
  CHECK(dom.holds);
  CHECK(dom.margin >= -1e-9);

  ConditionVerdict wk = check_condition(g, c2, x, EnergyCondition::weak, cfg);
  CHECK_FALSE(wk.holds);
  CHECK(wk.margin == doctest::Approx(0.75 * c2 - c2).epsilon(1e-9));
  // violating observer is the unit time direction e_0 = (1/c, 0, 0, 0)
  CHECK(std::fabs(wk.witness[0] - 1.0 / gp.c) < 1e-12);
  CHECK(std::fabs(wk.witness[1]) + std::fabs(wk.witness[2]) + std::fabs(wk.witness[3]) < 1e-12);

  ConditionVerdict sll =
      check_condition(g, 0.0, x, EnergyCondition::strict_lightlike_convergence, cfg);
  ConditionVerdict stl =
      check_condition(g, 0.0, x, EnergyCondition::strict_timelike_convergence, cfg);
  ConditionVerdict scc =
      check_condition(g, 0.0, x, EnergyCondition::strict_causal_convergence, cfg);
  CHECK(sll.holds);
  CHECK(sll.margin > 0.4 * c2);
  CHECK(stl.holds);
  CHECK(scc.holds);

  // weak margin decreases monotonically in lambda
  double prev = 1e300;
  for (double L : {0.0, c2 / 4.0, 0.75 * c2, c2}) {
    const double m = check_condition(g, L, x, EnergyCondition::weak, cfg).margin;
    CHECK(m <= prev + 1e-12);
    prev = m;
  }
}

TEST_CASE("exact diagonal margins agree with the sampler core") {
  SamplerConfig cfg;
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int disagreements = 0;
  double worst_gap = 0.0;
  MatN dummy;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    VecN diag(n);
    for (int i = 0; i < n; ++i) diag[i] = u(rng);
    MatN tf;
    tf.rows = n;
    tf.cols = n;
    for (int i = 0; i < n; ++i) tf(i, i) = diag[i];
    for (EnergyCondition c :
         {EnergyCondition::weak, EnergyCondition::semi_dominant, EnergyCondition::dominant,
          EnergyCondition::strict_weak, EnergyCondition::strict_semi_dominant,
          EnergyCondition::strict_dominant}) {
      ConditionVerdict exact = diag_exact_check(diag, c);
      ConditionVerdict sampled = check_condition_frame(n, tf, dummy, c, cfg);
      worst_gap = std::max(worst_gap, std::fabs(exact.margin - sampled.margin));
      if (std::fabs(exact.margin) > 1e-9 && exact.holds != sampled.holds) ++disagreements;
    }
  }
  CHECK(disagreements == 0);
  CHECK(worst_gap < 1e-12);
}

TEST_CASE("exact diagonal rule: reference rows") {
  // rho = 1, pressure -2: weak fails with margin -1
  ConditionVerdict va = diag_exact_check(vecn({1.0, -2.0, 0.0, 0.0}), EnergyCondition::weak);
  CHECK_FALSE(va.holds);
  CHECK(va.margin == doctest::Approx(-1.0).epsilon(1e-15));

  // vacuum: non-strict holds, strict fails (boundary rule)
  VecN z = vecn({0.0, 0.0, 0.0});
  CHECK(diag_exact_check(z, EnergyCondition::weak).holds);
  CHECK(diag_exact_check(z, EnergyCondition::dominant).holds);
  CHECK_FALSE(diag_exact_check(z, EnergyCondition::strict_weak).holds);

  // family diagonal at the quarter point: dominant holds
  CHECK(diag_exact_check(vecn({2.0, 2.0, 2.0, 0.0}), EnergyCondition::dominant).holds);

  // dominant needs |p_i| <= rho even when the weak combination is fine
  ConditionVerdict big = diag_exact_check(vecn({1.0, 2.0, 0.0}), EnergyCondition::semi_dominant);
  CHECK_FALSE(big.holds);
  CHECK(big.margin == doctest::Approx(1.0 - 4.0).epsilon(1e-15));

  // convergence conditions have no exact diagonal rule here
  CHECK_THROWS_AS((void)diag_exact_check(z, EnergyCondition::timelike_convergence), ContractError);
  CHECK_THROWS_AS((void)diag_exact_check(z, EnergyCondition::strict_lightlike_convergence),
                  ContractError);
}

TEST_CASE("sampled verdicts are deterministic for a fixed config") {
  SamplerConfig cfg;
  GcnParams gp{1.5, 3};
  MetricField g = gcn_metric(gp);
  VecN x = vecn({0.4, -1.2, 0.7});
  ConditionVerdict a = check_condition(g, 0.5, x, EnergyCondition::weak, cfg);
  ConditionVerdict b = check_condition(g, 0.5, x, EnergyCondition::weak, cfg);
  CHECK(a.holds == b.holds);
  CHECK(a.margin == b.margin);
  for (int i = 0; i < 3; ++i) CHECK(a.witness[i] == b.witness[i]);
}

TEST_CASE("region sweep aggregates verdicts over a grid") {
  SamplerConfig cfg;
  GcnParams gp{2.0, 3};
  MetricField g = gcn_metric(gp);
  std::vector<VecN> grid;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) grid.push_back(vecn({-1.0 + a, -1.0 + b, -1.0 + c}));
  RegionReport rep = region_sweep(
      g, 1.0, grid, {EnergyCondition::dominant, EnergyCondition::timelike_convergence}, cfg);
  REQUIRE(rep.verdicts.size() == grid.size());
  REQUIRE(rep.conditions.size() == 2);
  CHECK(rep.holds_everywhere[0]);
  CHECK(rep.holds_everywhere[1]);
  CHECK(rep.min_margin[0] >= -1e-9);
  // min_margin really is the minimum of the per-point margins
  double lo = 1e300;
  for (size_t i = 0; i < grid.size(); ++i) lo = std::min(lo, rep.verdicts[i][0].margin);
  CHECK(rep.min_margin[0] == doctest::Approx(lo).epsilon(1e-15));
}

TEST_CASE("riemannian input is rejected") {
  SamplerConfig cfg;
  MetricField r = MetricField::make(3, 0, [](const auto* x, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
    (void)x;
    for (int i = 0; i < 9; ++i) out[i] = T(0.0);
    out[0] = T(1.0);
    out[4] = T(1.0);
    out[8] = T(1.0);
  });
  CHECK_THROWS_AS((void)check_condition(r, 0.0, VecN(3), EnergyCondition::weak, cfg),
                  UnsupportedIndexError);
}

TEST_CASE("condition names round-trip") {
  for (EnergyCondition c : all_conditions()) {
    CHECK(condition_from_name(condition_name(c)) == c);
  }
  CHECK_THROWS_AS((void)condition_from_name("no-such-condition"), ContractError);
}
