// lorentzlab - verification suites shared by the CLI and the acceptance
// harness. Each check pits a computed quantity against an independent
// prediction and records the worst deviation, so a suite report doubles as
// a numerical-accuracy survey of the library.

#include "lorentz/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

#include "lorentz/catalog.hpp"
#include "lorentz/curvature.hpp"
#include "lorentz/distributions.hpp"
#include "lorentz/energy.hpp"
#include "lorentz/fields.hpp"
#include "lorentz/foliation.hpp"
#include "lorentz/gcn.hpp"
#include "lorentz/smallmat.hpp"
#include "lorentz/stretch.hpp"

namespace lorentz {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- option plumbing -------------------------------------------------------

std::vector<double> c_values(const SuiteOptions& o, std::initializer_list<double> pinned) {
  if (o.c > 0.0) return {o.c};
  return std::vector<double>(pinned);
}

int count_or(const SuiteOptions& o, int pinned) { return o.samples > 0 ? o.samples : pinned; }

std::mt19937_64 check_rng(const SuiteOptions& o, unsigned long long salt) {
  std::mt19937_64 rng(o.seed ^ (salt * 0x9e3779b97f4a7c15ull));
  rng.discard(7);
  return rng;
}

VecN random_point(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  VecN x(n);
  for (int i = 0; i < n; i++) x[i] = u(rng);
  return x;
}

// Runs one named check body with the (possibly overridden) tolerance wired
// in; an exception becomes a failed check carrying the error text.
// Overrides match by check name first, then by suite name.
struct CheckRunner {
  const SuiteOptions& opts;
  std::vector<CheckResult>* out;
  const char* suite = "";

  void run(const char* name, double pinned_tol, double expected,
           const std::function<void(CheckResult&)>& body) {
    CheckResult cr;
    cr.name = name;
    cr.tolerance = pinned_tol;
    auto it = opts.tol.find(cr.name);
    if (it == opts.tol.end()) it = opts.tol.find(suite);
    if (it != opts.tol.end()) cr.tolerance = it->second;
    cr.expected = expected;
    try {
      body(cr);
    } catch (const std::exception& e) {
      cr.pass = false;
      cr.measured = std::numeric_limits<double>::quiet_NaN();
      if (!cr.note.empty()) cr.note += "; ";
      cr.note += std::string("error: ") + e.what();
    }
    out->push_back(std::move(cr));
  }
};

// ---- small numeric helpers --------------------------------------------------

double qform(const MatN& m, const VecN& v) {
  double acc = 0.0;
  for (int i = 0; i < v.n; i++)
    for (int j = 0; j < v.n; j++) acc += m(i, j) * v[i] * v[j];
  return acc;
}

double max_abs_diff(const VecN& a, const VecN& b) {
  double worst = 0.0;
  for (int i = 0; i < a.n; i++) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

double max_abs_diff(const MatN& a, const MatN& b) {
  double worst = 0.0;
  for (int i = 0; i < a.rows; i++)
    for (int j = 0; j < a.cols; j++) worst = std::max(worst, std::fabs(a(i, j) - b(i, j)));
  return worst;
}

double table_diff(int n, const ChristoffelTable& a, const ChristoffelTable& b) {
  double worst = 0.0;
  for (int k = 0; k < n; k++)
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) worst = std::max(worst, std::fabs(a.at(k, i, j) - b.at(k, i, j)));
  return worst;
}

std::vector<VecN> axis_grid(int n, double lo, double hi, int per_axis) {
  int total = 1;
  for (int i = 0; i < n; i++) total *= per_axis;
  std::vector<VecN> pts;
  pts.reserve(static_cast<size_t>(total));
  for (int idx = 0; idx < total; idx++) {
    VecN x(n);
    int rem = idx;
    for (int a = 0; a < n; a++) {
      int cell = rem % per_axis;
      rem /= per_axis;
      x[a] = per_axis == 1 ? 0.5 * (lo + hi)
                           : lo + (hi - lo) * static_cast<double>(cell) / (per_axis - 1);
    }
    pts.push_back(x);
  }
  return pts;
}

VectorField constant_field(int n, const VecN& value) {
  return VectorField::make(n, [n, value](const auto* x, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(*x)>>;
    (void)x;
    for (int i = 0; i < n; i++) out[i] = T(value[i]);
  });
}

// ---- curvature suite --------------------------------------------------------

void curvature_checks(const SuiteOptions& o, std::vector<CheckResult>* out) {
  CheckRunner r{o, out, "curvature"};

  const std::vector<double> table_cs = c_values(o, {1.0, 2.0, 5.0});
  const std::vector<double> cs = c_values(o, {1.0, 2.0});
  const int table_points = count_or(o, 100);

  auto table_dev = [&](DerivMode mode) {
    double worst = 0.0;
    auto rng = check_rng(o, 11);
    for (double c : table_cs) {
      GcnParams params{c, 3, 0.0};
      MetricField g = gcn_metric(params);
      for (int k = 0; k < table_points; k++) {
        VecN x = random_point(rng, 3, -2.0, 2.0);
        ChristoffelTable numeric = christoffel_coordinates(g, x, mode, o.fd_step);
        ChristoffelTable exact = gcn_coordinate_christoffels(params, x);
        worst = std::max(worst, table_diff(3, numeric, exact));
      }
    }
    return worst;
  };

  r.run("christoffel-table-dual", 1e-9, 0.0, [&](CheckResult& cr) {
    cr.measured = table_dev(DerivMode::dual);
    cr.pass = cr.measured <= cr.tolerance;
    cr.note = "coordinate Christoffels vs the closed-form family table, dual-number derivatives";
  });

  r.run("christoffel-table-fd", 1e-5, 0.0, [&](CheckResult& cr) {
    cr.measured = table_dev(DerivMode::finite_difference);
    cr.pass = cr.measured <= cr.tolerance;
    cr.note = "same points with centered finite differences, step " + format_number(o.fd_step);
  });

  r.run("frame-ricci", 1e-8, 0.0, [&](CheckResult& cr) {
    double worst = 0.0;
    auto rng = check_rng(o, 12);
    for (double c : cs)
      for (int n : {3, 4, 5}) {
        GcnParams params{c, n, 0.0};
        MetricField g = gcn_metric(params);
        Frame frame = gcn_frame(params);
        GcnGroundTruth truth = gcn_ground_truth(params);
        for (int k = 0; k < 10; k++) {
          VecN x = random_point(rng, n, -2.0, 2.0);
          CurvatureReport rep = curvature_report(g, x, &frame, false, o.mode, o.fd_step);
          worst = std::max(worst, max_abs_diff(rep.frame_ricci, truth.frame_ricci));
        }
      }
    cr.measured = worst;
    cr.pass = cr.measured <= cr.tolerance;
    std::string diags;
    for (double c : cs) {
      if (!diags.empty()) diags += ", ";
      diags += format_number(c * c / 2.0);
    }
    cr.note = "frame Ricci vs (c^2/2) diag(1,1,1,0,...) over n in {3,4,5}; diagonal value "
              "c^2/2 = " + diags;
  });

  r.run("scalar-curvature", 1e-8, 0.0, [&](CheckResult& cr) {
    double worst = 0.0;
    auto rng = check_rng(o, 13);
    for (double c : cs)
      for (int n : {3, 4, 5}) {
        GcnParams params{c, n, 0.0};
        MetricField g = gcn_metric(params);
        for (int k = 0; k < 10; k++) {
          VecN x = random_point(rng, n, -2.0, 2.0);
          worst = std::max(worst, std::fabs(scalar_curv(g, x, o.mode, o.fd_step) - c * c / 2.0));
        }
      }
    cr.measured = worst;
    cr.pass = cr.measured <= cr.tolerance;
    cr.note = "scalar curvature vs the constant c^2/2";
  });

  r.run("frame-energy-momentum", 1e-8, 0.0, [&](CheckResult& cr) {
    double worst = 0.0;
    auto rng = check_rng(o, 14);
    for (double c : cs)
      for (int n : {3, 4, 5}) {
        std::vector<double> lambdas =
            o.lambda_set ? std::vector<double>{o.lambda}
                         : std::vector<double>{-1.0, 0.0, c * c / 4.0};
        for (double lam : lambdas) {
          GcnParams params{c, n, lam};
          MetricField g = gcn_metric(params);
          Frame frame = gcn_frame(params);
          GcnGroundTruth truth = gcn_ground_truth(params);
          for (int k = 0; k < 5; k++) {
            VecN x = random_point(rng, n, -2.0, 2.0);
            EnergyMomentum em = energy_momentum(g, lam, x, o.mode, o.fd_step);
            MatN t_frame = contract_frame(em.t, frame, x);
            worst = std::max(worst, max_abs_diff(t_frame, truth.frame_t));
          }
        }
      }
    cr.measured = worst;
    cr.pass = cr.measured <= cr.tolerance;
    cr.note =
        "frame T vs diag(3c^2/4 - lambda, c^2/4 + lambda, c^2/4 + lambda, ...); the n > 3 tail "
        "entries equal lambda - c^2/4 and vanish exactly at lambda = c^2/4";
  });

  r.run("weyl-dim4", 1e-8, 0.0, [&](CheckResult& cr) {
    double worst = 0.0;
    auto rng = check_rng(o, 15);
    for (double c : cs) {
      GcnParams params{c, 4, 0.0};
      MetricField g = gcn_metric(params);
      for (int k = 0; k < 10; k++) {
        VecN x = random_point(rng, 4, -2.0, 2.0);
        RiemannTensor w = weyl(g, x, o.mode, o.fd_step);
        for (int i = 0; i < 4; i++)
          for (int j = 0; j < 4; j++)
            for (int a = 0; a < 4; a++)
              for (int b = 0; b < 4; b++) worst = std::max(worst, std::fabs(w.at(i, j, a, b)));
      }
    }
    cr.measured = worst;
    cr.pass = cr.measured <= cr.tolerance;
    cr.note =
        "largest Weyl component of the n = 4 member against a vanishing target; the measured "
        "components are genuinely nonzero (the n = 4 member is not conformally flat), so this "
        "check fails honestly rather than restate the computation";
  });
}

// ---- geodesics suite --------------------------------------------------------

struct OracleState {
  VecN p;
  VecN v;
};

// Random states with omega = c^2 (v_0 + p_2 v_1) held in [-2, 2] so a fixed
// RK4 resolution resolves every trajectory; even indices pin omega = 0
// exactly to exercise the polynomial branch.
std::vector<OracleState> oracle_states(std::mt19937_64& rng, int count, double c) {
  std::uniform_real_distribution<double> u1(-1.0, 1.0);
  std::uniform_real_distribution<double> u2(-2.0, 2.0);
  std::vector<OracleState> states;
  states.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; i++) {
    OracleState s;
    s.p = VecN(3);
    for (int k = 0; k < 3; k++) s.p[k] = u1(rng);
    s.v = VecN(3);
    s.v[1] = u1(rng);
    s.v[2] = u1(rng);
    double w = (i % 2 == 0) ? 0.0 : u2(rng);
    s.v[0] = -s.p[2] * s.v[1] + w / (c * c);
    states.push_back(s);
  }
  return states;
}

double oracle_sup_error(const GcnParams& params, const MetricField& g, const OracleState& s,
                        int steps, const SuiteOptions& o, double* drift) {
  GeodesicPath path = geodesic_integrate(g, s.p, s.v, 5.0, steps, o.mode, o.fd_step);
  double sup = 0.0;
  double g0 = 0.0;
  double worst_drift = 0.0;
  for (size_t i = 0; i < path.times.size(); i++) {
    VecN pos(3);
    VecN vel(3);
    gcn_geodesic(params, s.p, s.v, path.times[i], &pos, &vel);
    sup = std::max(sup, max_abs_diff(path.positions[i], pos));
    sup = std::max(sup, max_abs_diff(path.velocities[i], vel));
    if (drift != nullptr) {
      double gv = qform(eval_value(g, path.positions[i]), path.velocities[i]);
      if (i == 0)
        g0 = gv;
      else
        worst_drift = std::max(worst_drift, std::fabs(gv - g0));
    }
  }
  if (drift != nullptr) *drift = worst_drift;
  return sup;
}

void geodesics_checks(const SuiteOptions& o, std::vector<CheckResult>* out) {
  CheckRunner r{o, out, "geodesics"};
  const std::vector<double> cs = c_values(o, {1.0, 2.0});
  const int state_count = count_or(o, 50);

  // Shared oracle run: worst closed-form deviation and invariant drift over
  // all sampled states at the configured resolution.
  double sup_all = 0.0;
  double drift_all = 0.0;
  std::string oracle_error;
  try {
    auto rng = check_rng(o, 21);
    for (double c : cs) {
      GcnParams params{c, 3, 0.0};
      MetricField g = gcn_metric(params);
      auto states = oracle_states(rng, state_count, c);
      for (const OracleState& s : states) {
        double drift = 0.0;
        sup_all = std::max(sup_all, oracle_sup_error(params, g, s, o.ode_steps, o, &drift));
        drift_all = std::max(drift_all, drift);
      }
    }
  } catch (const std::exception& e) {
    oracle_error = e.what();
  }

  r.run("rk4-closed-form", 1e-6, 0.0, [&](CheckResult& cr) {
    if (!oracle_error.empty()) throw std::runtime_error(oracle_error);
    cr.measured = sup_all;
    cr.pass = cr.measured <= cr.tolerance;
    cr.note = "sup RK4-vs-closed-form deviation on t in [0,5], " +
              std::to_string(o.ode_steps) + " steps, both branches of the frequency";
  });

  r.run("invariant-drift", 1e-8, 0.0, [&](CheckResult& cr) {
    if (!oracle_error.empty()) throw std::runtime_error(oracle_error);
    cr.measured = drift_all;
    cr.pass = cr.measured <= cr.tolerance;
    cr.note = "worst drift of g(v,v) along the same integrations";
  });

  r.run("rk4-order", 0.0, 8.0, [&](CheckResult& cr) {
    auto rng = check_rng(o, 22);
    double c = cs.front();
    GcnParams params{c, 3, 0.0};
    MetricField g = gcn_metric(params);
    auto states = oracle_states(rng, std::min(state_count, 10), c);
    double coarse = 0.0;
    double fine = 0.0;
    for (const OracleState& s : states) {
      coarse = std::max(coarse, oracle_sup_error(params, g, s, 256, o, nullptr));
      fine = std::max(fine, oracle_sup_error(params, g, s, 512, o, nullptr));
    }
    cr.measured = coarse / fine;
    cr.pass = cr.measured >= cr.expected;
    cr.note = "error contraction when halving the step (256 vs 512 steps): sup " +
              format_number(coarse) + " -> " + format_number(fine) +
              "; a fourth-order integrator contracts by ~16";
  });

  r.run("closed-geodesic-return", 1e-6, 0.0, [&](CheckResult& cr) {
    double worst = 0.0;
    bool classified = true;
    for (double c : cs) {
      GcnParams params{c, 3, 0.0};
      MetricField g = gcn_metric(params);
      VecN origin(3);
      VecN v = make_vec({1.0, 0.0, std::sqrt(2.0) * c});
      double period = 2.0 * M_PI / (c * c);
      GeodesicPath path = geodesic_integrate(g, origin, v, period, o.ode_steps, o.mode, o.fd_step);
      worst = std::max(worst, max_abs_diff(path.positions.back(), origin));
      worst = std::max(worst, max_abs_diff(path.velocities.back(), v));
      ClosedGeodesicResult res = closed_geodesic_classify(params, origin, v);
      if (!res.closed || std::fabs(res.period - period) > 1e-9 * period) classified = false;
    }
    cr.measured = worst;
    cr.pass = classified && cr.measured <= cr.tolerance;
    cr.note = classified
                  ? "v = (1, 0, sqrt(2) c) returns to its initial state at t = 2 pi / c^2"
                  : "classifier failed to mark v = (1, 0, sqrt(2) c) as closed with period 2 pi / c^2";
  });

  r.run("classifier-agreement", 0.0, 0.0, [&](CheckResult& cr) {
    auto rng = check_rng(o, 23);
    std::uniform_real_distribution<double> u1(-1.0, 1.0);
    const int count = count_or(o, 1000);
    int disagreements = 0;
    for (int i = 0; i < count; i++) {
      double c = o.c > 0.0 ? o.c : (i % 2 == 0 ? 1.0 : 2.0);
      int n = (i % 4 == 3) ? 4 : 3;
      GcnParams params{c, n, 0.0};
      VecN p = random_point(rng, n, -2.0, 2.0);
      VecN v(n);
      v[1] = u1(rng);
      v[2] = u1(rng);
      switch (i % 4) {
        case 0:
        case 1: {
          double s = std::sqrt((v[1] * v[1] + v[2] * v[2]) / (2.0 * c * c));
          v[0] = -p[2] * v[1] + (i % 4 == 0 ? s : -s);
          break;
        }
        case 2:
          v[0] = u1(rng);
          break;
        default: {
          double s = std::sqrt((v[1] * v[1] + v[2] * v[2]) / (2.0 * c * c));
          v[0] = -p[2] * v[1] + s;
          v[3] = u1(rng);  // tail motion forbids closing
          break;
        }
      }
      double omega = gcn_omega(params, p, v);
      bool direct_closed = false;
      if (std::fabs(omega) > 1e-9) {
        VecN pos(n);
        VecN vel(n);
        gcn_geodesic(params, p, v, 2.0 * M_PI / std::fabs(omega), &pos, &vel);
        direct_closed = max_abs_diff(pos, p) < 1e-6 && max_abs_diff(vel, v) < 1e-6;
      }
      ClosedGeodesicResult res = closed_geodesic_classify(params, p, v);
      if (res.closed != direct_closed) disagreements++;
    }
    cr.measured = static_cast<double>(disagreements);
    cr.pass = disagreements == 0;
    cr.note = "algebraic closure classifier vs direct period evaluation on " +
              std::to_string(count) + " states (constructed-closed, generic, and tail-moving)";
  });

  r.run("classifier-causal-exclusion", 0.0, 0.0, [&](CheckResult& cr) {
    auto rng = check_rng(o, 24);
    std::uniform_real_distribution<double> u1(-1.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int count = count_or(o, 1000);
    int closed_causal = 0;
    for (int i = 0; i < count; i++) {
      double c = o.c > 0.0 ? o.c : (i % 2 == 0 ? 1.0 : 2.0);
      GcnParams params{c, 3, 0.0};
      VecN p = random_point(rng, 3, -2.0, 2.0);
      VecN v(3);
      v[1] = u1(rng);
      v[2] = u1(rng);
      double radius = std::sqrt(v[1] * v[1] + v[2] * v[2]) / c;
      double scale = (i % 2 == 0) ? 1.0 : 1.0 + u01(rng);  // lightlike / timelike
      double sign = (i % 3 == 0) ? -1.0 : 1.0;
      v[0] = -p[2] * v[1] + sign * radius * scale;
      if (closed_geodesic_classify(params, p, v).closed) closed_causal++;
    }
    cr.measured = static_cast<double>(closed_causal);
    cr.pass = closed_causal == 0;
    cr.note = "no causal initial velocity may classify as closed";
  });

  r.run("isometry-pullback", 1e-12, 0.0, [&](CheckResult& cr) {
    double worst = 0.0;
    auto rng = check_rng(o, 25);
    const int points = count_or(o, 100);
    for (double c : c_values(o, {2.0, 3.0}))
      for (int n : {3, 4}) {
        GcnParams params{c, n, 0.0};
        for (int k = 0; k < points; k++) {
          VecN x = random_point(rng, n, -2.0, 2.0);
          worst = std::max(worst, gcn_isometry_check(params, x));
        }
      }
    cr.measured = worst;
    cr.pass = cr.measured <= cr.tolerance;
    cr.note = "family member vs (1/c^2) pullback of the c = 1 member under the rescaling chart";
  });
}

// ---- loop suite -------------------------------------------------------------

void loop_checks(const SuiteOptions& o, std::vector<CheckResult>* out) {
  CheckRunner r{o, out, "loop"};
  const std::vector<double> ps = {-5.0, 0.0, 17.0};
  const GcnParams base{1.0, 3, 0.0};

  r.run("loop-joins", 1e-12, 0.0, [&](CheckResult& cr) {
    double worst = 0.0;
    for (double p : ps) worst = std::max(worst, loop_join_residual(timelike_loop(base, p)));
    cr.measured = worst;
    cr.pass = cr.measured <= cr.tolerance;
    cr.note = "worst C^1 mismatch over the interior joins of the eleven-segment paths, p in {-5, 0, 17}";
  });

  r.run("loop-margin", 0.0, 0.0, [&](CheckResult& cr) {
    double worst = kInf;
    const int samples = count_or(o, 1000);
    for (double p : ps)
      worst = std::min(worst, loop_min_margin(timelike_loop(base, p), samples, 1.0));
    cr.measured = worst;
    cr.pass = cr.measured > 0.0;
    cr.note = "minimum timelikeness margin (v_0 + x_2 v_1)^2 - v_1^2 - v_2^2 over " +
              std::to_string(samples) + " samples per segment";
  });

  r.run("loop-closure", 1e-12, 0.0, [&](CheckResult& cr) {
    double worst = 0.0;
    for (double p : ps) {
      std::vector<LoopSegment> loop = closed_loop_g1(base, p);
      double pos[3];
      double vel[3];
      loop.front().eval(0.0, pos, vel);
      VecN start = make_vec({pos[0], pos[1], pos[2]});
      worst = std::max(worst, max_abs_diff(start, make_vec({p, 0.0, 0.0})));
      worst = std::max(worst, max_abs_diff(make_vec({vel[0], vel[1], vel[2]}),
                                           make_vec({1.0, 0.0, 0.0})));
      for (size_t i = 0; i < loop.size(); i++) {
        const LoopSegment& cur = loop[i];
        const LoopSegment& nxt = loop[(i + 1) % loop.size()];
        double pa[3], va[3], pb[3], vb[3];
        cur.eval(cur.length, pa, va);
        nxt.eval(0.0, pb, vb);
        for (int k = 0; k < 3; k++) {
          worst = std::max(worst, std::fabs(pa[k] - pb[k]));
          worst = std::max(worst, std::fabs(va[k] - vb[k]));
        }
      }
    }
    cr.measured = worst;
    cr.pass = cr.measured <= cr.tolerance;
    cr.note = "closed loop: C^1 joins including the wrap-around, start (p,0,0) with derivative (1,0,0)";
  });

  r.run("pullback-margin", 0.0, 0.0, [&](CheckResult& cr) {
    const double c = o.c > 0.0 ? o.c : 2.0;
    GcnParams target{c, 3, 0.0};
    TimelikeLoopPlan plan = timelike_loop(base, -5.0);
    double worst = kInf;
    const int samples = 200;
    for (const LoopSegment& seg : plan.segments) {
      LoopSegment mapped = pullback_loop_segment(target, seg);
      for (int i = 0; i <= samples; i++) {
        double t = mapped.length * static_cast<double>(i) / samples;
        double pos[3];
        double vel[3];
        mapped.eval(t, pos, vel);
        double a = vel[0] + pos[2] * vel[1];
        worst = std::min(worst, c * c * a * a - vel[1] * vel[1] - vel[2] * vel[2]);
      }
    }
    cr.measured = worst;
    cr.pass = cr.measured > 0.0;
    cr.note = "plan mapped through the inverse rescaling chart stays timelike for c = " +
              format_number(c);
  });
}

// ---- energy suite -----------------------------------------------------------

VecN ground_truth_diag(const GcnParams& params) {
  GcnGroundTruth truth = gcn_ground_truth(params);
  VecN d(params.n);
  for (int i = 0; i < params.n; i++) d[i] = truth.frame_t(i, i);
  return d;
}

void energy_checks(const SuiteOptions& o, std::vector<CheckResult>* out) {
  CheckRunner r{o, out, "energy"};
  const double c = o.c > 0.0 ? o.c : 1.0;
  GcnParams params{c, 3, 0.0};
  MetricField g = gcn_metric(params);
  SamplerConfig cfg;
  cfg.sphere_directions = count_or(o, 2048);
  cfg.interior_points = std::max(8, count_or(o, 2048) / 4);
  const std::vector<VecN> grid = axis_grid(3, -2.0, 2.0, 5);

  r.run("dominant-quarter-lambda", 1e-9, 0.0, [&](CheckResult& cr) {
    const double lam = c * c / 4.0;
    RegionReport rep = region_sweep(g, lam, grid, {EnergyCondition::dominant}, cfg, o.mode,
                                    o.fd_step);
    cr.measured = rep.min_margin[0];
    cr.pass = rep.holds_everywhere[0] && cr.measured >= -cr.tolerance;
    cr.note = "dominant condition at lambda = c^2/4 over a 5^3 grid; the exact margin is 0 "
              "(boundary case), so the verdict tolerates -1e-9";
  });

  r.run("weak-violation-witness", 1e-6, 0.0, [&](CheckResult& cr) {
    const double lam = o.lambda_set ? o.lambda : c * c;
    ConditionVerdict predicted =
        diag_exact_check(ground_truth_diag(GcnParams{c, 3, lam}), EnergyCondition::weak);
    cr.expected = predicted.margin;
    RegionReport rep =
        region_sweep(g, lam, grid, {EnergyCondition::weak}, cfg, o.mode, o.fd_step);
    cr.measured = rep.min_margin[0];
    bool agree = rep.holds_everywhere[0] == predicted.holds;
    if (!predicted.holds) {
      // violated case: the infimum sits at the cone apex e_0, where the
      // sampled and closed-form margins coincide exactly
      const ConditionVerdict& worst = rep.verdicts[static_cast<size_t>(rep.worst_point[0])][0];
      double apex_dev = 0.0;
      for (int i = 1; i < worst.witness_frame.n; i++) apex_dev += std::fabs(worst.witness_frame[i]);
      agree = agree && std::fabs(cr.measured - predicted.margin) <= cr.tolerance &&
              apex_dev <= cr.tolerance;
      cr.note = "weak condition violated as predicted at lambda = " + format_number(lam) +
                "; witness is the frame time axis with margin 3c^2/4 - lambda";
    } else {
      cr.note = "weak condition holds at lambda = " + format_number(lam) +
                " in agreement with the closed-form verdict (sampled and closed-form margins "
                "use different normalizations when positive)";
    }
    cr.pass = agree;
  });

  r.run("strict-lightlike-convergence", 0.0, c * c, [&](CheckResult& cr) {
    RegionReport rep = region_sweep(g, 0.0, grid, {EnergyCondition::strict_lightlike_convergence},
                                    cfg, o.mode, o.fd_step);
    cr.measured = rep.min_margin[0];
    cr.pass = rep.holds_everywhere[0] && cr.measured > 0.0;
    cr.note = "Ric(v,v) on the lightlike cone; for n = 3 the closed form gives exactly c^2 on "
              "the unit slice";
  });

  r.run("strict-timelike-convergence", 0.0, c * c / 2.0, [&](CheckResult& cr) {
    RegionReport rep = region_sweep(g, 0.0, grid, {EnergyCondition::strict_timelike_convergence},
                                    cfg, o.mode, o.fd_step);
    cr.measured = rep.min_margin[0];
    cr.pass = rep.holds_everywhere[0] && cr.measured > 0.0;
    cr.note = "Ric(v,v) on the timelike cone; the closed-form infimum is c^2/2 at the apex";
  });

  r.run("sampled-vs-exact-agreement", 0.0, 0.0, [&](CheckResult& cr) {
    const std::vector<double> lambdas =
        o.lambda_set ? std::vector<double>{o.lambda}
                     : std::vector<double>{-1.0, 0.0, c * c / 4.0, c * c};
    const std::vector<EnergyCondition> conds = {
        EnergyCondition::weak, EnergyCondition::semi_dominant, EnergyCondition::dominant,
        EnergyCondition::strict_weak};
    SamplerConfig small = cfg;
    small.sphere_directions = std::min(cfg.sphere_directions, 512);
    small.interior_points = std::min(cfg.interior_points, 128);
    const std::vector<VecN> grid3 = axis_grid(3, -1.5, 1.5, 3);
    int disagreements = 0;
    int skipped = 0;
    for (double lam : lambdas) {
      VecN diag = ground_truth_diag(GcnParams{c, 3, lam});
      RegionReport rep = region_sweep(g, lam, grid3, conds, small, o.mode, o.fd_step);
      for (size_t j = 0; j < conds.size(); j++) {
        ConditionVerdict predicted = diag_exact_check(diag, conds[j]);
        if (std::fabs(predicted.margin) <= 1e-6 * std::max(1.0, c * c)) {
          skipped++;  // boundary margin: boolean verdicts legitimately unstable
          continue;
        }
        for (size_t i = 0; i < grid3.size(); i++)
          if (rep.verdicts[i][j].holds != predicted.holds) disagreements++;
      }
    }
    cr.measured = static_cast<double>(disagreements);
    cr.pass = disagreements == 0;
    cr.note = "cone-sampled verdicts vs closed-form diagonal verdicts over lambda grid; " +
              std::to_string(skipped) + " boundary-margin combinations skipped";
  });
}

// ---- stretch suite ----------------------------------------------------------

// Random polynomial congruence metric G = A^T diag(-1, 1, ..., 1) A with
// A = I + (entries linear in x, coefficients below 0.05), so G is an index-1
// polynomial metric, safely nondegenerate on [-0.6, 0.6]^n.
MetricField poly_congruence_metric(int n, const std::array<double, 80>& coef) {
  return MetricField::make(n, 1, [n, coef](const auto* x, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(*x)>>;
    T a[4][4];
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        T acc = T(i == j ? 1.0 : 0.0);
        for (int k = 0; k < n; k++)
          acc = acc + coef[static_cast<size_t>((i * 4 + j) * 5 + k)] * x[k];
        a[i][j] = acc;
      }
    for (int r = 0; r < n; r++)
      for (int s = 0; s < n; s++) {
        T acc = -a[0][r] * a[0][s];
        for (int i = 1; i < n; i++) acc = acc + a[i][r] * a[i][s];
        out[r * n + s] = acc;
      }
  });
}

void stretch_checks(const SuiteOptions& o, std::vector<CheckResult>* out) {
  CheckRunner r{o, out, "stretch"};
  const double c = o.c > 0.0 ? o.c : 1.0;

  r.run("stretched-table-oracle", 1e-7, 0.0, [&](CheckResult& cr) {
    auto rng = check_rng(o, 41);
    std::uniform_real_distribution<double> uc(-0.05, 0.05);
    std::uniform_real_distribution<double> us(-0.2, 0.2);
    const int metrics = count_or(o, 20);
    double worst = 0.0;
    ScalarField f_fields[2];
    for (int m = 0; m < metrics; m++) {
      const int n = (m % 2 == 0) ? 3 : 4;
      std::array<double, 80> coef{};
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
          for (int k = 0; k < n; k++) coef[static_cast<size_t>((i * 4 + j) * 5 + k)] = uc(rng);
      MetricField g = poly_congruence_metric(n, coef);
      std::vector<VectorField> seeds;
      for (int a = 0; a < n; a++) {
        VecN dir(n);
        dir[a] = 1.0;
        for (int i = 0; i < n; i++) dir[i] += us(rng);
        seeds.push_back(constant_field(n, dir));
      }
      VecN x = random_point(rng, n, -0.4, 0.4);
      Frame adapted = seeded_frame(g, seeds, x);
      ChristoffelTable gamma = orthonormal_christoffel(g, adapted, x);
      f_fields[0] = ScalarField::make(n, [](const auto* y) {
        using T = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
        (void)y;
        return T(0.8);
      });
      f_fields[1] = ScalarField::make(n, [](const auto* y) {
        using std::sin;
        using T = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
        return T(1.0) + 0.1 * sin(y[1]);
      });
      for (const ScalarField& f : f_fields) {
        ScalarJet fj = evaluate_jet(f, x, 1, o.mode, o.fd_step);
        VecN df_frame(n);
        for (int a = 0; a < n; a++) {
          VecN e_a = eval_value(adapted.fields[static_cast<size_t>(a)], x);
          double acc = 0.0;
          for (int i = 0; i < n; i++) acc += e_a[i] * fj.grad[i];
          df_frame[a] = acc;
        }
        ChristoffelTable predicted =
            stretched_christoffel_table(gamma, 1, fj.value, df_frame, adapted.eps.data());
        StretchSpec spec{g, make_distribution({adapted.fields[0]}), f};
        MetricField stretched = stretch(spec);
        Frame barred = barred_frame(spec, adapted);
        ChristoffelTable brute = orthonormal_christoffel(stretched, barred, x);
        worst = std::max(worst, table_diff(n, predicted, brute));
      }
    }
    cr.measured = worst;
    cr.pass = cr.measured <= cr.tolerance;
    cr.note = "case-by-case rewritten table vs brute-force orthonormal Christoffels of the "
              "stretched metric on random polynomial metrics/frames in R^3 and R^4, constant "
              "and x_1-dependent factors (all eight vertical/horizontal index cases occur)";
  });

  r.run("asymptotics-exact-family", 1e-9, 0.0, [&](CheckResult& cr) {
    auto rng = check_rng(o, 42);
    GcnParams params{c, 3, 0.0};
    MetricField g = gcn_metric(params);
    Frame frame = gcn_frame(params);
    Distribution v = make_distribution({frame.fields[0]});
    Distribution h = make_distribution({frame.fields[1], frame.fields[2]});
    const std::vector<double> eps_list = {0.1, 0.05, 0.02, 0.01};
    double worst = 0.0;
    for (int k = 0; k < 3; k++) {
      VecN x = random_point(rng, 3, -1.0, 1.0);
      StretchAsymptotics sw = ricci_asymptotics(g, h, v, x, eps_list);
      for (const StretchAsymptoticsRow& row : sw.rows) {
        double e2 = row.eps * row.eps;
        worst = std::max(worst, e2 * std::max({row.r_hh, row.r_vv, row.r_mix}));
      }
    }
    cr.measured = worst;
    cr.pass = cr.measured <= cr.tolerance;
    cr.note = "|eps^2 Ric - b/4| in the barred frame for eps in {0.1, 0.05, 0.02, 0.01}; the "
              "family keeps the relation exact at every eps";
  });

  r.run("asymptotics-perturbed-bounded", 0.0, 0.0, [&](CheckResult& cr) {
    CatalogEntry entry = catalog_entry("g13-perturbed");
    const std::vector<double> eps_list = {0.1, 0.05, 0.02, 0.01};
    StretchAsymptotics sw =
        ricci_asymptotics(entry.metric, entry.h, entry.v, entry.anchor, eps_list);
    double c_hh = 0.0;
    double c_vv = 0.0;
    double c_mix = 0.0;
    for (const StretchAsymptoticsRow& row : sw.rows) {
      c_hh = std::max(c_hh, row.r_hh);
      c_vv = std::max(c_vv, row.r_vv);
      c_mix = std::max(c_mix, row.eps * row.r_mix);
    }
    cr.measured = std::max({c_hh, c_vv, c_mix});
    cr.pass = sw.hh_bounded && sw.vv_bounded && sw.mix_bounded;
    cr.note = "conformally perturbed base metric: residual constants stay bounded across the "
              "sweep (C_HH = " + format_number(c_hh) + ", C_VV = " + format_number(c_vv) +
              ", C_mix = " + format_number(c_mix) + " with eps-weighted mixed block)";
  });

  r.run("b-beta-identities", 1e-9, 0.0, [&](CheckResult& cr) {
    auto rng = check_rng(o, 43);
    GcnParams params{c, 3, 0.0};
    MetricField g = gcn_metric(params);
    Frame frame = gcn_frame(params);
    Distribution h = make_distribution({frame.fields[1], frame.fields[2]});
    std::vector<VecN> points;
    for (int k = 0; k < 5; k++) points.push_back(random_point(rng, 3, -1.0, 1.0));
    const int trials = count_or(o, 1000);
    NicenessCertificate cert = niceness_certificate(g, h, points, trials);
    double worst_slack = kInf;
    for (const NicenessSample& s : cert.samples)
      worst_slack = std::min({worst_slack, s.slack_b_bound, s.slack_beta_bound,
                              s.slack_momentum_bound});
    BBeta bb = b_beta(g, h, points.front());
    double lam2 = 0.0;
    for (int i = 0; i < bb.lambda.n; i++) lam2 += bb.lambda[i] * bb.lambda[i];
    double trace_g = 0.0;
    for (int a = 0; a < 3; a++) trace_g += bb.eps[static_cast<size_t>(a)] * bb.b(a, a);
    double dev = std::max(std::fabs(bb.b(0, 0) - 2.0 * lam2), std::fabs(trace_g - 2.0 * lam2));
    cr.measured = std::max({dev, -worst_slack, 0.0});
    cr.pass = cr.measured <= cr.tolerance && cert.dominant_nice;
    cr.note = "b(e_0,e_0) = 2|lam|^2, trace_g b = 2|lam|^2, and the beta/momentum lower bounds "
              "over " + std::to_string(trials) + " unit-switch-norm causal samples per point; "
              "certificate constants c_weak = " + format_number(cert.c_weak) +
              ", c_semidom = " + format_number(cert.c_semidom) +
              ", c_causal = " + format_number(cert.c_causal);
  });

  r.run("key-lemma-bound", 1e-12, 0.0, [&](CheckResult& cr) {
    auto rng = check_rng(o, 44);
    std::uniform_real_distribution<double> uang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    GcnParams params{c, 3, 0.0};
    MetricField g = gcn_metric(params);
    Frame frame = gcn_frame(params);
    Distribution v = make_distribution({frame.fields[0]});
    Distribution h = make_distribution({frame.fields[1], frame.fields[2]});
    // Planes P = span{e_1 + a_1 e_0, e_2 + a_2 e_0} have graph slope exactly
    // N = sqrt(a_1^2 + a_2^2) over H; proposals draw N in [0, 2f] and the
    // stretched-timelike ones (N > f) are rejected, leaving nontimelike
    // planes whose bound and operator norm have a closed-form oracle.
    auto tilted = [&](const VectorField& eh, double a) {
      VectorField e0 = frame.fields[0];
      return VectorField::make(3, [eh, e0, a](const auto* y, auto* out) {
        using T = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
        T tmp[3];
        eval(eh, y, out);
        eval(e0, y, tmp);
        for (int i = 0; i < 3; i++) out[i] = out[i] + a * tmp[i];
      });
    };
    const std::vector<double> factors = {1.0, 0.1, 0.01};
    const int want = count_or(o, 1000);
    double worst_dev = 0.0;
    double min_slack = kInf;
    int misclass = 0;
    int rejected_total = 0;
    std::string counts;
    for (double f : factors) {
      int accepted = 0;
      int rejected = 0;
      long long attempts = 0;
      const long long cap = 20LL * want;
      while (accepted < want && attempts < cap) {
        attempts++;
        VecN x = random_point(rng, 3, -2.0, 2.0);
        double slope = 2.0 * f * u01(rng);
        if (std::fabs(slope - f) <= 1e-6 * f) continue;  // dichotomy boundary
        double ang = uang(rng);
        Distribution plane = make_distribution(
            {tilted(frame.fields[1], slope * std::cos(ang)),
             tilted(frame.fields[2], slope * std::sin(ang))});
        KeyLemmaResult res = key_lemma_bound(g, v, h, f, plane, x);
        if (res.contains_timelike) {
          rejected++;
          if (slope < f) misclass++;  // a sub-factor slope must never be timelike
          continue;
        }
        accepted++;
        if (slope > f || !res.bound_holds) misclass++;
        worst_dev = std::max(worst_dev, std::fabs(res.operator_norm - slope));
        min_slack = std::min(min_slack, res.slack);
      }
      rejected_total += rejected;
      if (!counts.empty()) counts += ", ";
      counts += format_number(f) + ": " + std::to_string(accepted);
      if (accepted < want) misclass++;  // proposal exhausted; report as failure
    }
    cr.measured = min_slack;
    cr.pass = misclass == 0 && cr.measured >= -cr.tolerance;
    cr.note = "nontimelike planes accepted per factor {" + counts + "}, " +
              std::to_string(rejected_total) +
              " stretched-timelike proposals rejected with witnesses; operator norm matches "
              "the constructed slope to " + format_number(worst_dev);
  });
}

// ---- foliation suite --------------------------------------------------------

void foliation_checks(const SuiteOptions& o, std::vector<CheckResult>* out) {
  CheckRunner r{o, out, "foliation"};
  BoxDomain box;
  box.center = make_vec({0.0, 0.0});
  box.p = 1;
  box.q = 1;
  box.r_b = 1.0;
  box.r_j = 2.0;
  box.a = 1.0;
  box.c_lip = 0.0;
  const std::vector<int> ks = {1, 2, 4, 8, 16};
  std::vector<Distribution> family;
  for (int k : ks) family.push_back(slope_wave_distribution(k));
  Distribution limit = horizontal_distribution(2, 1);
  const std::vector<VecN> t_samples = {make_vec({-0.5}), make_vec({0.0}), make_vec({0.5})};

  ConvergenceSweep sweep;
  std::string sweep_error;
  try {
    sweep = convergence_sweep(family, ks, limit, box, t_samples);
  } catch (const std::exception& e) {
    sweep_error = e.what();
  }

  r.run("leaf-sup-decay", 1e-8, 0.0, [&](CheckResult& cr) {
    if (!sweep_error.empty()) throw std::runtime_error(sweep_error);
    double worst = -kInf;
    std::string sups;
    for (size_t i = 0; i < sweep.rows.size(); i++) {
      worst = std::max(worst, sweep.rows[i].sup_distance - box.r_b / ks[i]);
      if (!sups.empty()) sups += ", ";
      sups += "k=" + std::to_string(ks[i]) + ": " + format_number(sweep.rows[i].sup_distance);
    }
    cr.measured = worst;
    cr.pass = cr.measured <= cr.tolerance;
    cr.note = "sup |f_k - t| minus the slope bound r_B/k per member (" + sups + ")";
  });

  r.run("cauchy-pairs", 1e-8, 0.0, [&](CheckResult& cr) {
    double worst = -kInf;
    bool all_pass = true;
    int pairs = 0;
    for (size_t i = 0; i < family.size(); i++)
      for (size_t j = i + 1; j < family.size(); j++) {
        CauchyReport rep = cauchy_bound_check(family[i], family[j], limit, box, t_samples);
        worst = std::max(worst, rep.lhs - rep.rhs);
        all_pass = all_pass && rep.pass;
        pairs++;
      }
    cr.measured = worst;
    cr.pass = all_pass && cr.measured <= cr.tolerance;
    cr.note = "leaf-distance Cauchy bound over all " + std::to_string(pairs) +
              " member pairs against the horizontal limit";
  });

  r.run("c1-diagnostic-decreasing", 1e-9, 0.0, [&](CheckResult& cr) {
    if (!sweep_error.empty()) throw std::runtime_error(sweep_error);
    double worst = -kInf;
    std::string diags;
    for (size_t i = 0; i < sweep.rows.size(); i++) {
      if (i + 1 < sweep.rows.size())
        worst = std::max(worst, sweep.rows[i + 1].c1_diagnostic - sweep.rows[i].c1_diagnostic);
      if (!diags.empty()) diags += ", ";
      diags += format_number(sweep.rows[i].c1_diagnostic);
    }
    cr.measured = worst;
    cr.pass = sweep.c1_decreasing && sweep.sup_decreasing;
    cr.note = "lattice-derivative deviation from the limit slopes decreases along the family ("
              + diags + ")";
  });
}

// ---- dispatch ----------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> echo_config(const std::string& suite,
                                                             const SuiteOptions& o) {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("suite", suite);
  e.emplace_back("mode", o.mode == DerivMode::dual ? "dual" : "finite-difference");
  e.emplace_back("fd-step", format_number(o.fd_step));
  e.emplace_back("ode-steps", std::to_string(o.ode_steps));
  e.emplace_back("samples", o.samples > 0 ? std::to_string(o.samples) : "default");
  e.emplace_back("seed", std::to_string(o.seed));
  e.emplace_back("c", o.c > 0.0 ? format_number(o.c) : "default");
  e.emplace_back("lambda", o.lambda_set ? format_number(o.lambda) : "default");
  std::string tols;
  for (const auto& [key, value] : o.tol) {
    if (!tols.empty()) tols += ",";
    tols += key + "=" + format_number(value);
  }
  e.emplace_back("tolerance-overrides", tols.empty() ? "none" : tols);
  return e;
}

void dispatch_suite(const std::string& name, const SuiteOptions& opts,
                    std::vector<CheckResult>* out) {
  if (name == "curvature")
    curvature_checks(opts, out);
  else if (name == "geodesics")
    geodesics_checks(opts, out);
  else if (name == "loop")
    loop_checks(opts, out);
  else if (name == "energy")
    energy_checks(opts, out);
  else if (name == "stretch")
    stretch_checks(opts, out);
  else if (name == "foliation")
    foliation_checks(opts, out);
  else
    throw ContractError("unknown suite: " + name);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"curvature", "geodesics", "loop",
                                                 "energy",    "stretch",   "foliation"};
  return names;
}

SuiteReport run_suite(const std::string& suite, const SuiteOptions& opts) {
  SuiteReport report;
  report.suite = suite;
  report.config_echo = echo_config(suite, opts);
  if (suite == "all") {
    for (const std::string& name : suite_names()) {
      std::vector<CheckResult> checks;
      dispatch_suite(name, opts, &checks);
      for (CheckResult& c : checks) {
        c.name = name + "/" + c.name;
        report.checks.push_back(std::move(c));
      }
    }
  } else {
    dispatch_suite(suite, opts, &report.checks);
  }
  return report;
}

}  // namespace lorentz
