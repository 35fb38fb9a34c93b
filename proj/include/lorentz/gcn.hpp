// lorentzlab - the explicit c-parameter metric family on R^n
//
// A family of Lorentzian metrics (index 1) on R^n, n >= 3, parameterized by
// c > 0:
//
//   g_00 = -c^2,  g_01 = -c^2 x_2,  g_11 = 1 - c^2 x_2^2,  g_22 = 1,
//   g_ii = 1 for i >= 3, all other components zero.
//
// The family carries an unusual amount of closed-form structure, which makes
// it the main reference workload for the curvature, geodesic, and energy
// sweeps: exact Christoffel symbols, exact geodesics (trigonometric in one
// regime, polynomial in the degenerate one), a coordinate rescaling relating
// every member to the c = 1 member, a clean criterion for closed geodesics,
// explicit closed timelike loops through every axis point, and constant
// curvature data in the family frame.

#pragma once

#include <functional>
#include <vector>

#include "lorentz/curvature.hpp"
#include "lorentz/fields.hpp"
#include "lorentz/smallmat.hpp"

namespace lorentz {

struct GcnParams {
  double c = 1.0;      // family parameter, > 0
  int n = 3;           // dimension, >= 3
  double lambda = 0.0; // constant used by the energy-momentum ground truth
};

// Throws ContractError unless c > 0 and 3 <= n <= kMaxDim.
void gcn_validate(const GcnParams& params);

// The metric field itself (index 1) and its orthonormal family frame
//   e_0 = (1/c) d_0,  e_1 = d_1 - x_2 d_0,  e_2 = d_2,  e_i = d_i (i >= 3)
// with signs eps = (-1, 1, ..., 1).
MetricField gcn_metric(const GcnParams& params);
Frame gcn_frame(const GcnParams& params);

// Closed-form coordinate Christoffel symbols at x. Nonzero entries (up to
// the i<->j symmetry) are
//   G^2_01 = c^2/2              G^0_02 = (c^2/2) x_2    G^1_02 = -c^2/2
//   G^2_11 = c^2 x_2            G^0_12 = (1 + c^2 x_2^2)/2
//   G^1_12 = -(c^2/2) x_2
ChristoffelTable gcn_coordinate_christoffels(const GcnParams& params, const VecN& x);

// Constant orthonormal Christoffel symbols g(nabla_{e_i} e_j, e_k) of the
// family frame: G^2_01 = G^2_10 = G^0_21 = c/2 and
// G^1_02 = G^0_12 = G^1_20 = -c/2, everything else zero.
ChristoffelTable gcn_orthonormal_christoffels(const GcnParams& params);

// Geodesic through p with initial velocity v, evaluated at parameter t by
// the closed forms. Let omega := c^2 (v_0 + p_2 v_1). For omega != 0 the
// solution is trigonometric with frequencies omega and 2*omega; for
// omega == 0 it is polynomial. Components i >= 3 evolve linearly. Velocity
// and acceleration come from dual-number differentiation of the position
// formulas, so all three are mutually consistent by construction.
void gcn_geodesic(const GcnParams& params, const VecN& p, const VecN& v, double t, VecN* position,
                  VecN* velocity);
void gcn_geodesic_state(const GcnParams& params, const VecN& p, const VecN& v, double t,
                        VecN* position, VecN* velocity, VecN* acceleration);

// omega for the closed-form branches, c^2 (v_0 + p_2 v_1).
double gcn_omega(const GcnParams& params, const VecN& p, const VecN& v);

// The coordinate rescaling phi(x) = (c^2 x_0, c x_1, ..., c x_{n-1}) pulls
// the c = 1 metric back onto c^2 times the parameter-c metric.
VecN gcn_phi(const GcnParams& params, const VecN& x);
VecN gcn_phi_inv(const GcnParams& params, const VecN& x);

// Max absolute component of  g_c(x) - (1/c^2) * (pullback of g_1 under phi)
// at x; zero in exact arithmetic.
double gcn_isometry_check(const GcnParams& params, const VecN& x);

struct ClosedGeodesicResult {
  bool closed = false;
  double period = 0.0;  // 2*pi/|omega|, set only when closed
};

// A geodesic through (p, v) is periodic iff 2 c^2 (v_0 + p_2 v_1)^2 equals
// v_1^2 + v_2^2 and v_i = 0 for all i >= 3; such a v is necessarily
// spacelike, so no causal geodesic is ever classified closed. The equality
// is tested to a small relative tolerance. Throws ContractError on v = 0.
ClosedGeodesicResult closed_geodesic_classify(const GcnParams& params, const VecN& p,
                                              const VecN& v, double tol = 1e-9);

// One closed-form piece of a timelike path in R^3: position and velocity as
// functions of a local parameter running over [0, length].
struct LoopSegment {
  double length = 0.0;
  std::function<void(double t, double* pos3, double* vel3)> eval;
};

// Eleven-segment C^1 path for the c = 1 member in R^3, from (p, 0, 0) to the
// origin, with derivative (1, 0, 0) at both ends and everywhere-timelike
// velocity. The long detour through large x_2 is what lets the path move
// backward in x_0 while staying timelike.
struct TimelikeLoopPlan {
  double p = 0.0;   // start is (p, 0, 0)
  double T = 0.0;   // straightaway length; satisfies 1 - 0.99(T+1) < cot(3.14)
  int T1 = 0;       // smallest positive integer making S > 0
  double S = 0.0;   // final straightaway length
  double B0 = 0.0;  // turnaround base coordinates
  double B1 = 0.0;
  std::vector<LoopSegment> segments;  // exactly 11 entries
};

// Builds the plan and validates it: C^1 joins to 1e-12 and strictly positive
// timelike margin (v_0 + x_2 v_1)^2 - v_1^2 - v_2^2 at 1,000 samples per
// segment. Throws ContractError if the constant selection or validation
// fails (it cannot for finite p).
TimelikeLoopPlan timelike_loop(const GcnParams& params, double p);

// Largest C^1 mismatch over the ten interior joins (max over position and
// velocity components).
double loop_join_residual(const TimelikeLoopPlan& plan);

// Minimum of the timelike margin c^2 (v_0 + x_2 v_1)^2 - v_1^2 - v_2^2 over
// uniform samples of every segment; positive means everywhere-timelike for
// the parameter-c member (the plan itself lives in the c = 1 member).
double loop_min_margin(const TimelikeLoopPlan& plan, int samples_per_segment, double c = 1.0);

// Closed C^1 loop through (p, 0, 0) for the c = 1 member: the plan from
// (p, 0, 0) to the origin followed by the x_0-translate of the plan from
// (-p, 0, 0). Translation in x_0 is an isometry (the metric depends on x_2
// only), so every segment stays timelike.
std::vector<LoopSegment> closed_loop_g1(const GcnParams& params, double p);

// Image of a c = 1 segment under phi^{-1}: position mapped pointwise,
// velocity by the (diagonal) derivative. Timelike for the parameter-c
// member whenever the input is timelike for c = 1.
LoopSegment pullback_loop_segment(const GcnParams& params, const LoopSegment& segment);

// Closed-form curvature data in the family frame: Ricci is
// (c^2/2) diag(1,1,1,0,...), the scalar curvature is c^2/2, and the
// energy-momentum tensor T = Ric - (1/2) scal g + lambda g is diagonal with
// entries (3c^2/4 - lambda, c^2/4 + lambda, c^2/4 + lambda) followed by
// lambda - c^2/4 on the Euclidean tail (Ric vanishes there while g is the
// identity, leaving the -(1/2) scal + lambda multiple of g).
struct GcnGroundTruth {
  int n = 0;
  MatN frame_ricci;
  double scal = 0.0;
  MatN frame_t;
};

GcnGroundTruth gcn_ground_truth(const GcnParams& params);

}  // namespace lorentz
