// lorentzlab - energy and convergence condition checkers

#include "lorentz/energy.hpp"

#include <cmath>
#include <cstring>

#include "lorentz/kernels.hpp"
#include "lorentz/sampling.hpp"
#include "lorentz/threads.hpp"

namespace lorentz {

namespace {

struct NameRow {
  EnergyCondition cond;
  const char* name;
  bool strict;
};

constexpr NameRow kNames[] = {
    {EnergyCondition::weak, "weak", false},
    {EnergyCondition::semi_dominant, "semi-dominant", false},
    {EnergyCondition::dominant, "dominant", false},
    {EnergyCondition::strict_weak, "strict-weak", true},
    {EnergyCondition::strict_semi_dominant, "strict-semi-dominant", true},
    {EnergyCondition::strict_dominant, "strict-dominant", true},
    {EnergyCondition::timelike_convergence, "timelike-convergence", false},
    {EnergyCondition::strict_timelike_convergence, "strict-timelike-convergence", true},
    {EnergyCondition::lightlike_convergence, "lightlike-convergence", false},
    {EnergyCondition::strict_lightlike_convergence, "strict-lightlike-convergence", true},
    {EnergyCondition::strict_causal_convergence, "strict-causal-convergence", true},
};

}  // namespace

const char* condition_name(EnergyCondition c) {
  for (const NameRow& row : kNames)
    if (row.cond == c) return row.name;
  throw ContractError("unknown energy condition value");
}

EnergyCondition condition_from_name(const std::string& name) {
  for (const NameRow& row : kNames)
    if (name == row.name) return row.cond;
  throw ContractError("unknown energy condition name: " + name);
}

bool condition_is_strict(EnergyCondition c) {
  for (const NameRow& row : kNames)
    if (row.cond == c) return row.strict;
  throw ContractError("unknown energy condition value");
}

const std::vector<EnergyCondition>& all_conditions() {
  static const std::vector<EnergyCondition> all = [] {
    std::vector<EnergyCondition> v;
    for (const NameRow& row : kNames) v.push_back(row.cond);
    return v;
  }();
  return all;
}

namespace {

// --- deterministic cone samples ---------------------------------------------

using sampling::kRadiusBase;
using sampling::radical_inverse;

void halton_direction(int d, long long index, double* out) {
  sampling::unit_direction(d, index, out);
}

// Slice samples v = e_0 + sum u_i e_i in frame components. Block layout:
// [0, time_hi)      timelike: u = 0 first, then low-discrepancy interior
// [time_hi, m)      lightlike: +-axis corners, then sphere directions
struct SampleSet {
  int n = 0;
  int m = 0;
  int time_hi = 0;
  std::array<std::vector<double>, kMaxDim> comp;

  std::array<const double*, kMaxDim> ptrs() const {
    std::array<const double*, kMaxDim> p{};
    for (int a = 0; a < n; ++a) p[static_cast<size_t>(a)] = comp[static_cast<size_t>(a)].data();
    return p;
  }
};

SampleSet build_samples(int n, const SamplerConfig& cfg) {
  if (n < 2 || n > kMaxDim) throw ContractError("cone sampler needs 2 <= n <= 8");
  if (cfg.interior_points < 1 || cfg.sphere_directions < 1)
    throw ContractError("sampler config needs at least one interior point and one direction");
  const int d = n - 1;
  SampleSet s;
  s.n = n;
  s.time_hi = cfg.interior_points;
  s.m = cfg.interior_points + 2 * d + cfg.sphere_directions;
  for (int a = 0; a < n; ++a) s.comp[static_cast<size_t>(a)].assign(static_cast<size_t>(s.m), 0.0);
  for (int k = 0; k < s.m; ++k) s.comp[0][static_cast<size_t>(k)] = 1.0;

  // interior: u = 0 (row 0 already zero), then direction * radius^{1/d}
  double dir[kMaxDim];
  for (int j = 1; j < cfg.interior_points; ++j) {
    halton_direction(d, j, dir);
    const double r = std::pow(radical_inverse(kRadiusBase, j), 1.0 / static_cast<double>(d));
    for (int i = 0; i < d; ++i) s.comp[static_cast<size_t>(i + 1)][static_cast<size_t>(j)] = r * dir[i];
  }
  // axis corners
  int row = s.time_hi;
  for (int i = 0; i < d; ++i) {
    s.comp[static_cast<size_t>(i + 1)][static_cast<size_t>(row++)] = 1.0;
    s.comp[static_cast<size_t>(i + 1)][static_cast<size_t>(row++)] = -1.0;
  }
  // sphere directions
  for (int k = 0; k < cfg.sphere_directions; ++k) {
    halton_direction(d, k + 1, dir);
    for (int i = 0; i < d; ++i) s.comp[static_cast<size_t>(i + 1)][static_cast<size_t>(row)] = dir[i];
    ++row;
  }
  return s;
}

struct AtomicResult {
  double margin = 0.0;
  int index = 0;
};

AtomicResult min_over(const std::vector<double>& slack, int lo, int hi) {
  const int at = kernels::argmin(slack.data() + lo, hi - lo) + lo;
  return {slack[static_cast<size_t>(at)], at};
}

AtomicResult better(const AtomicResult& a, const AtomicResult& b) {
  return b.margin < a.margin ? b : a;
}

void require_square(const MatN& m, int n, const char* what) {
  if (m.rows != n || m.cols != n) throw ContractError(std::string(what) + ": matrix size mismatch");
}

}  // namespace

ConditionVerdict check_condition_frame(int n, const MatN& t_frame, const MatN& ricci_frame,
                                       EnergyCondition condition, const SamplerConfig& cfg) {
  const bool needs_t = condition == EnergyCondition::weak ||
                       condition == EnergyCondition::semi_dominant ||
                       condition == EnergyCondition::dominant ||
                       condition == EnergyCondition::strict_weak ||
                       condition == EnergyCondition::strict_semi_dominant ||
                       condition == EnergyCondition::strict_dominant;
  if (needs_t)
    require_square(t_frame, n, "energy-momentum frame block");
  else
    require_square(ricci_frame, n, "ricci frame block");

  SampleSet s = build_samples(n, cfg);
  const std::array<const double*, kMaxDim> v = s.ptrs();
  const size_t mm = static_cast<size_t>(s.m);

  // Shared slack arrays, filled on demand.
  std::vector<double> tq, neg_gww, tv0, rq;
  auto ensure_tq = [&] {
    if (!tq.empty()) return;
    tq.resize(mm);
    kernels::sym_quad(n, t_frame.a.data(), v.data(), s.m, tq.data());
  };
  std::array<std::vector<double>, kMaxDim> tv_store;
  auto ensure_tv = [&] {
    if (!neg_gww.empty()) return;
    std::array<double*, kMaxDim> tv{};
    for (int a = 0; a < n; ++a) {
      tv_store[static_cast<size_t>(a)].resize(mm);
      tv[static_cast<size_t>(a)] = tv_store[static_cast<size_t>(a)].data();
    }
    kernels::sym_matvec(n, t_frame.a.data(), v.data(), s.m, tv.data());
    // -g(w,w) with w = -sharp(T(v,.)): frame components of w are the
    // eps-flipped entries of T v, so g(w,w) = -(Tv)_0^2 + sum_i (Tv)_i^2.
    MatN eps_diag;
    eps_diag.rows = n;
    eps_diag.cols = n;
    eps_diag(0, 0) = -1.0;
    for (int i = 1; i < n; ++i) eps_diag(i, i) = 1.0;
    std::array<const double*, kMaxDim> tvc{};
    for (int a = 0; a < n; ++a) tvc[static_cast<size_t>(a)] = tv[static_cast<size_t>(a)];
    std::vector<double> gww(mm);
    kernels::sym_quad(n, eps_diag.a.data(), tvc.data(), s.m, gww.data());
    neg_gww.resize(mm);
    for (size_t k = 0; k < mm; ++k) neg_gww[k] = -gww[k];
    // time component of w in the frame: w^0 = (Tv)_0
    tv0 = tv_store[0];
  };
  auto ensure_rq = [&] {
    if (!rq.empty()) return;
    rq.resize(mm);
    kernels::sym_quad(n, ricci_frame.a.data(), v.data(), s.m, rq.data());
  };

  // Non-strict conditions quantify over timelike vectors, but their slack
  // functions are continuous, so the infimum over the open cone equals the
  // minimum over its closure [0, m). Only the strict timelike convergence
  // condition is genuinely restricted to the open block.
  AtomicResult res;
  switch (condition) {
    case EnergyCondition::weak:
    case EnergyCondition::strict_weak:
      ensure_tq();
      res = min_over(tq, 0, s.m);
      break;
    case EnergyCondition::semi_dominant:
    case EnergyCondition::strict_semi_dominant:
      ensure_tv();
      res = min_over(neg_gww, 0, s.m);
      break;
    case EnergyCondition::dominant:
    case EnergyCondition::strict_dominant: {
      ensure_tq();
      ensure_tv();
      res = min_over(tq, 0, s.m);
      res = better(res, min_over(neg_gww, 0, s.m));
      // cone-component refinement: w must share the component of v
      res = better(res, min_over(tv0, 0, s.m));
      break;
    }
    case EnergyCondition::timelike_convergence:
      ensure_rq();
      res = min_over(rq, 0, s.m);
      break;
    case EnergyCondition::strict_timelike_convergence:
      ensure_rq();
      res = min_over(rq, 0, s.time_hi);
      break;
    case EnergyCondition::lightlike_convergence:
    case EnergyCondition::strict_lightlike_convergence:
      ensure_rq();
      res = min_over(rq, s.time_hi, s.m);
      break;
    case EnergyCondition::strict_causal_convergence:
      ensure_rq();
      res = better(min_over(rq, 0, s.time_hi), min_over(rq, s.time_hi, s.m));
      break;
  }

  ConditionVerdict verdict;
  verdict.condition = condition;
  verdict.margin = res.margin;
  verdict.holds = condition_is_strict(condition) ? res.margin > cfg.tolerance
                                                 : res.margin >= -cfg.tolerance;
  verdict.witness_frame.n = n;
  for (int a = 0; a < n; ++a)
    verdict.witness_frame[a] = s.comp[static_cast<size_t>(a)][static_cast<size_t>(res.index)];
  return verdict;
}

namespace {

// Orthonormal frame at x with the timelike vector moved to row 0. Throws
// UnsupportedIndexError unless exactly one direction is timelike.
void time_first_frame(const MetricField& g, const VecN& x, MatN* frame) {
  if (g.index != 1) throw UnsupportedIndexError("energy conditions need a metric of index 1");
  MatN vectors;
  int eps[kMaxDim] = {0};
  orthonormal_frame_at(g, x, &vectors, eps);
  int time_at = -1;
  int negatives = 0;
  for (int a = 0; a < g.dim; ++a) {
    if (eps[a] < 0) {
      ++negatives;
      time_at = a;
    }
  }
  if (negatives != 1)
    throw UnsupportedIndexError("frame construction found an index other than 1");
  frame->rows = g.dim;
  frame->cols = g.dim;
  int row = 1;
  for (int a = 0; a < g.dim; ++a) {
    const int dst = (a == time_at) ? 0 : row++;
    for (int i = 0; i < g.dim; ++i) (*frame)(dst, i) = vectors(a, i);
  }
}

MatN to_frame(const MatN& coord, const MatN& frame, int n) {
  MatN out;
  out.rows = n;
  out.cols = n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += frame(a, i) * coord(i, j) * frame(b, j);
      out(a, b) = acc;
    }
  return out;
}

}  // namespace

ConditionVerdict check_condition(const MetricField& g, double lambda, const VecN& x,
                                 EnergyCondition condition, const SamplerConfig& cfg,
                                 DerivMode mode, double fd_step) {
  if (x.n != g.dim) throw ContractError("point dimension mismatch");
  MatN frame;
  time_first_frame(g, x, &frame);

  MatN t_frame, ricci_frame;
  const bool needs_t = condition == EnergyCondition::weak ||
                       condition == EnergyCondition::semi_dominant ||
                       condition == EnergyCondition::dominant ||
                       condition == EnergyCondition::strict_weak ||
                       condition == EnergyCondition::strict_semi_dominant ||
                       condition == EnergyCondition::strict_dominant;
  if (needs_t) {
    EnergyMomentum em = energy_momentum(g, lambda, x, mode, fd_step);
    t_frame = to_frame(em.t, frame, g.dim);
  } else {
    ricci_frame = to_frame(ricci(g, x, mode, fd_step), frame, g.dim);
  }

  ConditionVerdict verdict = check_condition_frame(g.dim, t_frame, ricci_frame, condition, cfg);
  verdict.witness.n = g.dim;
  for (int i = 0; i < g.dim; ++i) {
    double acc = 0.0;
    for (int a = 0; a < g.dim; ++a) acc += verdict.witness_frame[a] * frame(a, i);
    verdict.witness[i] = acc;
  }
  return verdict;
}

ConditionVerdict diag_exact_check(const VecN& t_frame_diagonal, EnergyCondition condition,
                                  double tolerance) {
  const int n = t_frame_diagonal.n;
  if (n < 2 || n > kMaxDim) throw ContractError("diagonal exact check needs 2 <= n <= 8");
  const double rho = t_frame_diagonal[0];
  double min_p = t_frame_diagonal[1];
  double max_abs_p = std::fabs(t_frame_diagonal[1]);
  int min_axis = 1;
  int max_axis = 1;
  for (int i = 2; i < n; ++i) {
    const double p = t_frame_diagonal[i];
    if (p < min_p) {
      min_p = p;
      min_axis = i;
    }
    if (std::fabs(p) > max_abs_p) {
      max_abs_p = std::fabs(p);
      max_axis = i;
    }
  }

  // Extremes over the closed slice ball |u| <= 1:
  //   T(v,v)   = rho + sum p_i u_i^2      min = min(rho, rho + min_p)
  //   -g(w,w)  = rho^2 - sum p_i^2 u_i^2  min = rho^2 - max_i p_i^2
  //   w^0      = rho                      (constant over the slice)
  const double weak_margin = std::min(rho, rho + min_p);
  const double semi_margin = rho * rho - max_abs_p * max_abs_p;

  ConditionVerdict verdict;
  verdict.condition = condition;
  verdict.witness_frame.n = n;
  verdict.witness_frame[0] = 1.0;
  auto witness_axis = [&](int axis) { verdict.witness_frame[axis] = 1.0; };

  switch (condition) {
    case EnergyCondition::weak:
    case EnergyCondition::strict_weak:
      verdict.margin = weak_margin;
      if (rho + min_p < rho) witness_axis(min_axis);
      break;
    case EnergyCondition::semi_dominant:
    case EnergyCondition::strict_semi_dominant:
      verdict.margin = semi_margin;
      if (max_abs_p > 0.0) witness_axis(max_axis);
      break;
    case EnergyCondition::dominant:
    case EnergyCondition::strict_dominant:
      verdict.margin = std::min(std::min(weak_margin, semi_margin), rho);
      if (verdict.margin == semi_margin && max_abs_p > 0.0)
        witness_axis(max_axis);
      else if (verdict.margin == weak_margin && rho + min_p < rho)
        witness_axis(min_axis);
      break;
    default:
      throw ContractError("diagonal exact check covers the energy-momentum conditions only");
  }
  verdict.holds = condition_is_strict(condition) ? verdict.margin > tolerance
                                                 : verdict.margin >= -tolerance;
  return verdict;
}

RegionReport region_sweep(const MetricField& g, double lambda, const std::vector<VecN>& grid,
                          const std::vector<EnergyCondition>& conditions, const SamplerConfig& cfg,
                          DerivMode mode, double fd_step) {
  if (grid.empty()) throw ContractError("region sweep needs a nonempty grid");
  if (conditions.empty()) throw ContractError("region sweep needs at least one condition");
  RegionReport report;
  report.points = grid;
  report.conditions = conditions;
  report.verdicts.assign(grid.size(), {});

  parallel_for(0, static_cast<int>(grid.size()), [&](int i) {
    std::vector<ConditionVerdict> row;
    row.reserve(conditions.size());
    for (EnergyCondition c : conditions)
      row.push_back(check_condition(g, lambda, grid[static_cast<size_t>(i)], c, cfg, mode, fd_step));
    report.verdicts[static_cast<size_t>(i)] = std::move(row);
  });

  const size_t nc = conditions.size();
  report.min_margin.assign(nc, 0.0);
  report.worst_point.assign(nc, 0);
  report.holds_everywhere.assign(nc, true);
  for (size_t j = 0; j < nc; ++j) {
    for (size_t i = 0; i < grid.size(); ++i) {
      const ConditionVerdict& v = report.verdicts[i][j];
      if (i == 0 || v.margin < report.min_margin[j]) {
        report.min_margin[j] = v.margin;
        report.worst_point[j] = static_cast<int>(i);
      }
      if (!v.holds) report.holds_everywhere[j] = false;
    }
  }
  return report;
}

}  // namespace lorentz
