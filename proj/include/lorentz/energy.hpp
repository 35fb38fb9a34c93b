// lorentzlab - energy and convergence condition checkers
//
// Evaluates the classical pointwise conditions on the energy-momentum tensor
// T = Ric - (1/2) scal g + lambda g of a Lorentzian metric (index 1):
//
//   weak                 T(v,v) >= 0 for every timelike v
//   semi-dominant        w := -sharp(T(v,.)) is not spacelike, timelike v
//   dominant             weak and semi-dominant
//   strict-weak          T(v,v) > 0 for every causal v
//   strict-semi-dominant w is timelike for every causal v
//   strict-dominant      both strict conditions
//
// plus the Ricci convergence conditions (timelike / lightlike, each with a
// strict variant, and strict-causal = both strict variants).
//
// The checker builds an orthonormal frame at the point (time direction
// first), expresses T and Ric in that frame, and scans the causal cone on
// the v_0 = 1 slice: v = e_0 + sum u_i e_i with |u| <= 1. Timelike samples
// are the slice center u = 0 (always first, so it wins argmin ties) plus
// low-discrepancy interior points; lightlike samples are the +-axis corners
// followed by low-discrepancy sphere directions. Every reported margin is
// the worst signed slack over the sampled set and comes with the vector that
// attains it.
//
// Verdict rule: non-strict conditions hold iff margin >= -tolerance; strict
// conditions hold iff margin > +tolerance, so an identically-zero tensor
// passes the weak condition and fails the strict one.

#pragma once

#include <string>
#include <vector>

#include "lorentz/curvature.hpp"
#include "lorentz/fields.hpp"
#include "lorentz/smallmat.hpp"

namespace lorentz {

enum class EnergyCondition {
  weak,
  semi_dominant,
  dominant,
  strict_weak,
  strict_semi_dominant,
  strict_dominant,
  timelike_convergence,
  strict_timelike_convergence,
  lightlike_convergence,
  strict_lightlike_convergence,
  strict_causal_convergence,
};

// Canonical kebab-case names ("weak", "semi-dominant", ...). The parser
// throws ContractError on unknown names.
const char* condition_name(EnergyCondition c);
EnergyCondition condition_from_name(const std::string& name);
bool condition_is_strict(EnergyCondition c);
const std::vector<EnergyCondition>& all_conditions();

struct SamplerConfig {
  int sphere_directions = 2048;  // low-discrepancy lightlike directions
  int interior_points = 512;     // low-discrepancy timelike samples (plus u = 0)
  double tolerance = 1e-9;       // margin tolerance of the verdict rule
};

struct ConditionVerdict {
  EnergyCondition condition = EnergyCondition::weak;
  bool holds = false;
  double margin = 0.0;      // worst signed slack over the sampled cone
  VecN witness;             // coordinate components of the attaining vector
  VecN witness_frame;       // frame components (slice form: first entry 1)
};

// Cone scan on frame-level data: T and Ric expressed in an orthonormal frame
// whose first vector is the timelike one. This is the computational core of
// check_condition; it is exposed so closed-form frame data can be fed in
// directly. The witness is reported in frame components only.
ConditionVerdict check_condition_frame(int n, const MatN& t_frame, const MatN& ricci_frame,
                                       EnergyCondition condition, const SamplerConfig& cfg = {});

// Full check at a point of a metric field. Throws UnsupportedIndexError
// unless the metric index is 1 (exactly one timelike frame direction).
ConditionVerdict check_condition(const MetricField& g, double lambda, const VecN& x,
                                 EnergyCondition condition, const SamplerConfig& cfg = {},
                                 DerivMode mode = DerivMode::dual, double fd_step = 1e-5);

// Closed-form verdict for a frame-diagonal energy-momentum tensor (entry 0
// is the timelike direction): with rho = d_0 and pressures p_i = d_i,
//   weak margin      min(rho, rho + min_i p_i)
//   semi margin      rho^2 - max_i p_i^2
//   dominant margin  additionally bounded by rho (the time component of w)
// Strict variants share the margins and apply the strict verdict rule.
// Convergence conditions are not expressible from T alone and throw
// ContractError.
ConditionVerdict diag_exact_check(const VecN& t_frame_diagonal, EnergyCondition condition,
                                  double tolerance = 1e-9);

struct RegionReport {
  std::vector<VecN> points;
  std::vector<EnergyCondition> conditions;
  // verdicts[i][j]: condition j at point i
  std::vector<std::vector<ConditionVerdict>> verdicts;
  // per condition: worst margin over the grid, the point index attaining it,
  // and whether the condition holds at every point
  std::vector<double> min_margin;
  std::vector<int> worst_point;
  std::vector<bool> holds_everywhere;
};

// Aggregated sweep over a grid of points; data-parallel per point with a
// deterministic (index-ordered) reduction. Errors from any point propagate.
RegionReport region_sweep(const MetricField& g, double lambda, const std::vector<VecN>& grid,
                          const std::vector<EnergyCondition>& conditions,
                          const SamplerConfig& cfg = {}, DerivMode mode = DerivMode::dual,
                          double fd_step = 1e-5);

}  // namespace lorentz
