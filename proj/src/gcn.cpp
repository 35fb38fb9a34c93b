// lorentzlab - closed forms for the c-parameter metric family

#include "lorentz/gcn.hpp"

#include <cmath>
#include <cstdio>

#include "lorentz/ad.hpp"
#include "lorentz/kernels.hpp"

namespace lorentz {

void gcn_validate(const GcnParams& params) {
  if (!(params.c > 0.0)) throw ContractError("family parameter c must be positive");
  if (params.n < 3 || params.n > kMaxDim)
    throw ContractError("family dimension must satisfy 3 <= n <= 8");
}

MetricField gcn_metric(const GcnParams& params) {
  gcn_validate(params);
  const double c2 = params.c * params.c;
  const int n = params.n;
  return MetricField::make(n, 1, [c2, n](const auto* x, auto* out) {
    for (int i = 0; i < n * n; ++i) out[i] = 0.0;
    out[0 * n + 0] = -c2;
    out[0 * n + 1] = -c2 * x[2];
    out[1 * n + 0] = -c2 * x[2];
    out[1 * n + 1] = 1.0 - c2 * (x[2] * x[2]);
    out[2 * n + 2] = 1.0;
    for (int i = 3; i < n; ++i) out[i * n + i] = 1.0;
  });
}

Frame gcn_frame(const GcnParams& params) {
  gcn_validate(params);
  const int n = params.n;
  Frame fr;
  fr.n = n;
  fr.eps[0] = -1;
  for (int i = 1; i < n; ++i) fr.eps[static_cast<size_t>(i)] = 1;

  const double inv_c = 1.0 / params.c;
  fr.fields.push_back(VectorField::make(n, [n, inv_c](const auto* x, auto* out) {
    (void)x;
    for (int i = 0; i < n; ++i) out[i] = 0.0;
    out[0] = inv_c;
  }));
  fr.fields.push_back(VectorField::make(n, [n](const auto* x, auto* out) {
    for (int i = 0; i < n; ++i) out[i] = 0.0;
    out[0] = -x[2];
    out[1] = 1.0;
  }));
  for (int k = 2; k < n; ++k) {
    fr.fields.push_back(VectorField::make(n, [n, k](const auto* x, auto* out) {
      (void)x;
      for (int i = 0; i < n; ++i) out[i] = 0.0;
      out[k] = 1.0;
    }));
  }
  return fr;
}

ChristoffelTable gcn_coordinate_christoffels(const GcnParams& params, const VecN& x) {
  gcn_validate(params);
  if (x.n != params.n) throw ContractError("point dimension mismatch");
  const double c2 = params.c * params.c;
  const double x2 = x[2];
  ChristoffelTable t;
  t.n = params.n;
  t.flavor = ChristoffelFlavor::coordinate;
  for (int k = 0; k < t.n; ++k) {
    t.entries[static_cast<size_t>(k)].rows = t.n;
    t.entries[static_cast<size_t>(k)].cols = t.n;
  }
  const double half_c2 = 0.5 * c2;
  t.at(2, 0, 1) = half_c2;
  t.at(2, 1, 0) = half_c2;
  t.at(0, 0, 2) = half_c2 * x2;
  t.at(0, 2, 0) = half_c2 * x2;
  t.at(1, 0, 2) = -half_c2;
  t.at(1, 2, 0) = -half_c2;
  t.at(2, 1, 1) = c2 * x2;
  t.at(0, 1, 2) = 0.5 * (1.0 + c2 * x2 * x2);
  t.at(0, 2, 1) = 0.5 * (1.0 + c2 * x2 * x2);
  t.at(1, 1, 2) = -half_c2 * x2;
  t.at(1, 2, 1) = -half_c2 * x2;
  return t;
}

ChristoffelTable gcn_orthonormal_christoffels(const GcnParams& params) {
  gcn_validate(params);
  ChristoffelTable t;
  t.n = params.n;
  t.flavor = ChristoffelFlavor::orthonormal;
  for (int k = 0; k < t.n; ++k) {
    t.entries[static_cast<size_t>(k)].rows = t.n;
    t.entries[static_cast<size_t>(k)].cols = t.n;
  }
  const double half_c = 0.5 * params.c;
  t.at(2, 0, 1) = half_c;
  t.at(2, 1, 0) = half_c;
  t.at(0, 2, 1) = half_c;
  t.at(1, 0, 2) = -half_c;
  t.at(0, 1, 2) = -half_c;
  t.at(1, 2, 0) = -half_c;
  return t;
}

double gcn_omega(const GcnParams& params, const VecN& p, const VecN& v) {
  gcn_validate(params);
  if (p.n != params.n || v.n != params.n) throw ContractError("point/velocity dimension mismatch");
  return params.c * params.c * (v[0] + p[2] * v[1]);
}

namespace {

// Position formulas, templated so jets in t produce velocity/acceleration.
template <class T>
void geodesic_position(const GcnParams& params, const VecN& p, const VecN& v, const T& t, T* out) {
  using std::cos;
  using std::sin;
  const double c2 = params.c * params.c;
  const double v1 = v[1];
  const double v2 = v[2];
  const double w = c2 * (v[0] + p[2] * v[1]);
  if (w != 0.0) {
    const double iw = 1.0 / w;
    const double iw2 = iw * iw;
    out[0] = (0.5 * v1 * v2 * iw2) * cos(2.0 * w * t) +
             (0.25 * (v2 * v2 - v1 * v1) * iw2) * sin(2.0 * w * t) -
             ((p[2] * w - v1) * iw2) * (v1 * sin(w * t) - v2 * cos(w * t)) +
             (w / c2 - 0.5 * (v1 * v1 + v2 * v2) * iw) * t +
             0.5 * (2.0 * p[0] * w * w - 2.0 * p[2] * v2 * w + v1 * v2) * iw2;
    out[1] = (v1 * sin(w * t) - v2 * cos(w * t) + p[1] * w + v2) * iw;
    out[2] = (v2 * sin(w * t) + v1 * cos(w * t) + p[2] * w - v1) * iw;
  } else {
    out[0] = -0.5 * v1 * v2 * t * t - p[2] * v1 * t + p[0];
    out[1] = v1 * t + p[1];
    out[2] = v2 * t + p[2];
  }
  for (int i = 3; i < p.n; ++i) out[i] = v[i] * t + p[i];
}

}  // namespace

void gcn_geodesic(const GcnParams& params, const VecN& p, const VecN& v, double t, VecN* position,
                  VecN* velocity) {
  gcn_validate(params);
  if (p.n != params.n || v.n != params.n) throw ContractError("point/velocity dimension mismatch");
  Jet1 tj = Jet1::seed(1, 0, t);
  Jet1 out[kMaxDim];
  geodesic_position(params, p, v, tj, out);
  position->n = params.n;
  velocity->n = params.n;
  for (int i = 0; i < params.n; ++i) {
    (*position)[i] = out[i].v;
    (*velocity)[i] = out[i].d[0];
  }
}

void gcn_geodesic_state(const GcnParams& params, const VecN& p, const VecN& v, double t,
                        VecN* position, VecN* velocity, VecN* acceleration) {
  gcn_validate(params);
  if (p.n != params.n || v.n != params.n) throw ContractError("point/velocity dimension mismatch");
  Jet2 tj = Jet2::seed(1, 0, t);
  Jet2 out[kMaxDim];
  geodesic_position(params, p, v, tj, out);
  position->n = params.n;
  velocity->n = params.n;
  acceleration->n = params.n;
  for (int i = 0; i < params.n; ++i) {
    (*position)[i] = out[i].v;
    (*velocity)[i] = out[i].d[0];
    (*acceleration)[i] = out[i].hess(0, 0);
  }
}

VecN gcn_phi(const GcnParams& params, const VecN& x) {
  gcn_validate(params);
  if (x.n != params.n) throw ContractError("point dimension mismatch");
  VecN y;
  y.n = x.n;
  y[0] = params.c * params.c * x[0];
  for (int i = 1; i < x.n; ++i) y[i] = params.c * x[i];
  return y;
}

VecN gcn_phi_inv(const GcnParams& params, const VecN& x) {
  gcn_validate(params);
  if (x.n != params.n) throw ContractError("point dimension mismatch");
  VecN y;
  y.n = x.n;
  y[0] = x[0] / (params.c * params.c);
  for (int i = 1; i < x.n; ++i) y[i] = x[i] / params.c;
  return y;
}

double gcn_isometry_check(const GcnParams& params, const VecN& x) {
  gcn_validate(params);
  if (x.n != params.n) throw ContractError("point dimension mismatch");
  const double c = params.c;
  MetricField gc = gcn_metric(params);
  GcnParams base = params;
  base.c = 1.0;
  MetricField g1 = gcn_metric(base);

  MatN a = eval_value(gc, x);
  MatN b = eval_value(g1, gcn_phi(params, x));
  const double inv_c2 = 1.0 / (c * c);
  double worst = 0.0;
  for (int i = 0; i < params.n; ++i) {
    const double di = (i == 0) ? c * c : c;
    for (int j = 0; j < params.n; ++j) {
      const double dj = (j == 0) ? c * c : c;
      const double pullback = inv_c2 * di * dj * b(i, j);
      const double r = std::fabs(a(i, j) - pullback);
      if (r > worst) worst = r;
    }
  }
  return worst;
}

ClosedGeodesicResult closed_geodesic_classify(const GcnParams& params, const VecN& p, const VecN& v,
                                              double tol) {
  gcn_validate(params);
  if (p.n != params.n || v.n != params.n) throw ContractError("point/velocity dimension mismatch");
  double vinf = 0.0;
  for (int i = 0; i < v.n; ++i) vinf = std::max(vinf, std::fabs(v[i]));
  if (vinf == 0.0) throw ContractError("closed_geodesic_classify requires a nonzero velocity");

  const double c2 = params.c * params.c;
  const double axis = v[0] + p[2] * v[1];
  const double plane_sq = v[1] * v[1] + v[2] * v[2];
  double tail_sq = 0.0;
  double tail_inf = 0.0;
  for (int i = 3; i < v.n; ++i) {
    tail_sq += v[i] * v[i];
    tail_inf = std::max(tail_inf, std::fabs(v[i]));
  }
  const double norm_sq = -c2 * axis * axis + plane_sq + tail_sq;  // g(v, v)

  const double crit = 2.0 * c2 * axis * axis - plane_sq;
  const double scale = std::max(1.0, std::max(2.0 * c2 * axis * axis, plane_sq));

  ClosedGeodesicResult res;
  res.closed = std::fabs(crit) <= tol * scale && tail_inf <= tol * vinf && norm_sq > 0.0;
  if (res.closed) {
    const double w = c2 * axis;  // nonzero: criterion + v != 0 force axis != 0
    res.period = 2.0 * kPi / std::fabs(w);
  }
  return res;
}

namespace {

constexpr double kTurn = 3.14;    // deliberately short of pi: the arcs overshoot slightly
constexpr double kSlope = 0.99;   // x_2 ramp rate of the straightaways

LoopSegment make_segment(double length, std::function<void(double, double*, double*)> eval) {
  LoopSegment s;
  s.length = length;
  s.eval = std::move(eval);
  return s;
}

}  // namespace

TimelikeLoopPlan timelike_loop(const GcnParams& params, double p) {
  gcn_validate(params);
  if (!std::isfinite(p)) throw ContractError("loop base parameter must be finite");

  const double s = std::sin(kTurn);
  const double co = std::cos(kTurn);

  TimelikeLoopPlan plan;
  plan.p = p;
  plan.T = 700.0;
  const double T = plan.T;
  if (!(1.0 - kSlope * (T + 1.0) < co / s))
    throw ContractError("loop straightaway constant rejected by the turn inequality");

  // Smallest positive integer T1 with S > 0, where
  //   -S = p + 2T + 6 + pi + 2 sin(kTurn) - 2 cos(kTurn) + (cos(kTurn) + sin(kTurn)) T1
  // (the T1 coefficient is about -0.9984, so S grows with T1).
  const double s_base = p + 2.0 * T + 6.0 + kPi + 2.0 * s - 2.0 * co;
  int t1 = 0;
  double S = 0.0;
  for (int k = 1; k < 100000000; ++k) {
    S = -(s_base + (co + s) * static_cast<double>(k));
    if (S > 0.0) {
      t1 = k;
      break;
    }
  }
  if (t1 == 0) throw ContractError("loop straightaway constant selection failed");
  plan.T1 = t1;
  plan.S = S;
  const double T1 = static_cast<double>(t1);
  const double B0 = p + T + 2.0 + 2.0 * s + co * T1;
  const double B1 = 2.0 - 2.0 * co + s * T1;
  plan.B0 = B0;
  plan.B1 = B1;

  const double z_top = kSlope * (T + 1.0);  // x_2 height of the detour

  plan.segments.push_back(make_segment(1.0, [p](double t, double* pos, double* vel) {
    pos[0] = p + t;
    pos[1] = 0.0;
    pos[2] = 0.5 * kSlope * t * t;
    vel[0] = 1.0;
    vel[1] = 0.0;
    vel[2] = kSlope * t;
  }));
  plan.segments.push_back(make_segment(T, [p](double t, double* pos, double* vel) {
    pos[0] = p + 1.0 + t;
    pos[1] = 0.0;
    pos[2] = kSlope * (0.5 + t);
    vel[0] = 1.0;
    vel[1] = 0.0;
    vel[2] = kSlope;
  }));
  plan.segments.push_back(make_segment(1.0, [p, T](double t, double* pos, double* vel) {
    pos[0] = p + T + 1.0 + t;
    pos[1] = 0.0;
    pos[2] = kSlope * (0.5 + T + t - 0.5 * t * t);
    vel[0] = 1.0;
    vel[1] = 0.0;
    vel[2] = kSlope * (1.0 - t);
  }));
  plan.segments.push_back(make_segment(kTurn, [p, T, z_top](double t, double* pos, double* vel) {
    pos[0] = p + T + 2.0 + std::sin(t);
    pos[1] = 1.0 - std::cos(t);
    pos[2] = z_top;
    vel[0] = std::cos(t);
    vel[1] = std::sin(t);
    vel[2] = 0.0;
  }));
  plan.segments.push_back(
      make_segment(T1, [p, T, s, co, z_top](double t, double* pos, double* vel) {
        pos[0] = p + T + 2.0 + s + co * t;
        pos[1] = 1.0 - co + s * t;
        pos[2] = z_top;
        vel[0] = co;
        vel[1] = s;
        vel[2] = 0.0;
      }));
  plan.segments.push_back(make_segment(kTurn, [B0, B1, z_top](double t, double* pos, double* vel) {
    pos[0] = B0 - std::sin(kTurn - t);
    pos[1] = B1 - 1.0 + std::cos(kTurn - t);
    pos[2] = z_top;
    vel[0] = std::cos(kTurn - t);
    vel[1] = std::sin(kTurn - t);
    vel[2] = 0.0;
  }));
  plan.segments.push_back(make_segment(1.0, [B0, B1, T](double t, double* pos, double* vel) {
    pos[0] = B0 + t;
    pos[1] = B1;
    pos[2] = kSlope * (T + 1.0 - 0.5 * t * t);
    vel[0] = 1.0;
    vel[1] = 0.0;
    vel[2] = -kSlope * t;
  }));
  plan.segments.push_back(make_segment(T, [B0, B1, T](double t, double* pos, double* vel) {
    pos[0] = B0 + 1.0 + t;
    pos[1] = B1;
    pos[2] = kSlope * (T + 0.5 - t);
    vel[0] = 1.0;
    vel[1] = 0.0;
    vel[2] = -kSlope;
  }));
  plan.segments.push_back(make_segment(1.0, [B0, B1, T](double t, double* pos, double* vel) {
    pos[0] = B0 + 1.0 + T + t;
    pos[1] = B1;
    pos[2] = kSlope * (0.5 - t + 0.5 * t * t);
    vel[0] = 1.0;
    vel[1] = 0.0;
    vel[2] = kSlope * (t - 1.0);
  }));
  plan.segments.push_back(make_segment(kPi, [B0, B1, T](double t, double* pos, double* vel) {
    pos[0] = B0 + 2.0 + T + t + 0.5 * B1 * (1.0 - std::cos(t));
    pos[1] = 0.5 * B1 * (std::cos(t) + 1.0);
    pos[2] = 0.0;
    vel[0] = 1.0 + 0.5 * B1 * std::sin(t);
    vel[1] = -0.5 * B1 * std::sin(t);
    vel[2] = 0.0;
  }));
  plan.segments.push_back(make_segment(S, [S](double t, double* pos, double* vel) {
    pos[0] = -S + t;
    pos[1] = 0.0;
    pos[2] = 0.0;
    vel[0] = 1.0;
    vel[1] = 0.0;
    vel[2] = 0.0;
  }));

  const double join = loop_join_residual(plan);
  if (!(join <= 1e-12)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "loop joins failed to meet 1e-12 (got %.3e)", join);
    throw ContractError(msg);
  }
  const double margin = loop_min_margin(plan, 1000, 1.0);
  if (!(margin > 0.0)) throw ContractError("loop plan lost strict timelikeness");
  return plan;
}

double loop_join_residual(const TimelikeLoopPlan& plan) {
  double worst = 0.0;
  for (size_t i = 0; i + 1 < plan.segments.size(); ++i) {
    double pa[3], va[3], pb[3], vb[3];
    plan.segments[i].eval(plan.segments[i].length, pa, va);
    plan.segments[i + 1].eval(0.0, pb, vb);
    for (int k = 0; k < 3; ++k) {
      worst = std::max(worst, std::fabs(pa[k] - pb[k]));
      worst = std::max(worst, std::fabs(va[k] - vb[k]));
    }
  }
  return worst;
}

double loop_min_margin(const TimelikeLoopPlan& plan, int samples_per_segment, double c) {
  if (samples_per_segment < 2) throw ContractError("need at least two samples per segment");
  const int m = samples_per_segment;
  std::vector<double> x2(static_cast<size_t>(m)), v0(static_cast<size_t>(m)),
      v1(static_cast<size_t>(m)), v2(static_cast<size_t>(m)), out(static_cast<size_t>(m));
  double best = 0.0;
  bool first = true;
  for (const LoopSegment& seg : plan.segments) {
    for (int k = 0; k < m; ++k) {
      const double t = seg.length * static_cast<double>(k) / static_cast<double>(m - 1);
      double pos[3], vel[3];
      seg.eval(t, pos, vel);
      x2[static_cast<size_t>(k)] = pos[2];
      v0[static_cast<size_t>(k)] = vel[0];
      v1[static_cast<size_t>(k)] = vel[1];
      v2[static_cast<size_t>(k)] = vel[2];
    }
    kernels::gc_margin(c, x2.data(), v0.data(), v1.data(), v2.data(), m, out.data());
    const int at = kernels::argmin(out.data(), m);
    const double lo = out[static_cast<size_t>(at)];
    if (first || lo < best) best = lo;
    first = false;
  }
  return best;
}

std::vector<LoopSegment> closed_loop_g1(const GcnParams& params, double p) {
  TimelikeLoopPlan out_leg = timelike_loop(params, p);
  TimelikeLoopPlan back_leg = timelike_loop(params, -p);
  std::vector<LoopSegment> loop = out_leg.segments;
  for (const LoopSegment& seg : back_leg.segments) {
    auto base = seg.eval;
    loop.push_back(make_segment(seg.length, [base, p](double t, double* pos, double* vel) {
      base(t, pos, vel);
      pos[0] += p;
    }));
  }
  return loop;
}

LoopSegment pullback_loop_segment(const GcnParams& params, const LoopSegment& segment) {
  gcn_validate(params);
  const double inv_c = 1.0 / params.c;
  const double inv_c2 = inv_c * inv_c;
  auto base = segment.eval;
  return make_segment(segment.length, [base, inv_c, inv_c2](double t, double* pos, double* vel) {
    base(t, pos, vel);
    pos[0] *= inv_c2;
    pos[1] *= inv_c;
    pos[2] *= inv_c;
    vel[0] *= inv_c2;
    vel[1] *= inv_c;
    vel[2] *= inv_c;
  });
}

GcnGroundTruth gcn_ground_truth(const GcnParams& params) {
  gcn_validate(params);
  const double c2 = params.c * params.c;
  GcnGroundTruth gt;
  gt.n = params.n;
  gt.scal = 0.5 * c2;
  gt.frame_ricci.rows = params.n;
  gt.frame_ricci.cols = params.n;
  gt.frame_t.rows = params.n;
  gt.frame_t.cols = params.n;
  for (int i = 0; i < 3; ++i) gt.frame_ricci(i, i) = 0.5 * c2;
  gt.frame_t(0, 0) = 0.75 * c2 - params.lambda;
  gt.frame_t(1, 1) = 0.25 * c2 + params.lambda;
  gt.frame_t(2, 2) = 0.25 * c2 + params.lambda;
  for (int i = 3; i < params.n; ++i) gt.frame_t(i, i) = params.lambda - 0.25 * c2;
  return gt;
}

}  // namespace lorentz
