// Leaf integration for distributions that are graphs over a horizontal
// coordinate block: integrate leaves of (near-)integrable distributions over
// a box, measure uniform and C^1 convergence of leaf families, and check the
// explicit Cauchy-type bound that controls |f^k_t - f^l_t| by the C^0
// distance of the slope fields.
//
// Conventions: the ambient space R^n splits as R^q x R^p with the VERTICAL
// block first (coordinates 0..q-1) and the HORIZONTAL block last
// (coordinates q..n-1). A distribution H transverse to the vertical axes is,
// at each point, the graph of a linear slope map lambda[H]: R^p -> R^q. A
// leaf through (t, 0) is the graph of a function f_t from the horizontal
// ball B (radius r_b) to the vertical ball J (radius r_j), recovered per
// grid point z by integrating the radial ODE
//
//   alpha'(s) = lambda[H(alpha(s), s z)](z),  alpha(0) = t,  f_t(z) = alpha(1).

#pragma once

#include <vector>

#include "lorentz/distributions.hpp"
#include "lorentz/fields.hpp"
#include "lorentz/smallmat.hpp"

namespace lorentz {

// Box B x J around `center`: B is the closed horizontal ball of radius r_b,
// J the closed vertical ball of radius r_j. `a` is a uniform bound on the
// slope norms |lambda[H_k]| over the box, `c_lip` a Lipschitz constant for
// the slope of the limit distribution. Start values live in the inner ball
// I of radius r_i() = r_j - a*r_b.
struct BoxDomain {
  VecN center;       // point of R^n, n = p + q
  int p = 0;         // horizontal dimension
  int q = 0;         // vertical dimension
  double r_b = 0.0;  // horizontal radius
  double r_j = 0.0;  // vertical radius
  double a = 0.0;    // uniform slope bound
  double c_lip = 0.0;

  double r_i() const { return r_j - a * r_b; }
};

// Throws ContractError unless p >= 1, q >= 1, p + q = center.n,
// r_b > 0, r_j > 0, a >= 0, c_lip >= 0, r_b*c_lip < 1 and a*r_b < r_j
// (hence r_i() > 0).
void validate_box(const BoxDomain& box);

// Sampled leaf graph f_t over the lattice covering B. The lattice is the
// tensor grid with grid_res points per horizontal axis on [-r_b, r_b]^p;
// points outside the ball B are masked out. values[i] is the vertical
// offset f_t(z) from the box center; trajectories (filled only on request)
// hold the ODE nodes alpha(s_0), ..., alpha(s_steps) per lattice point.
struct LeafGraph {
  BoxDomain box;
  VecN t;            // vertical start offset, |t| <= r_i()
  int grid_res = 0;
  int ode_steps = 0;
  std::vector<VecN> grid;                       // lattice points z in R^p
  std::vector<char> inside;                     // |z| <= r_b mask
  std::vector<VecN> values;                     // f_t(z) in R^q
  std::vector<std::vector<VecN>> trajectories;  // optional ODE nodes
};

// Integrates the leaf of `h` through center + t. `h` must be transverse to
// the vertical axes along every trajectory (TransversalityError otherwise).
// Throws ContractError for invalid box/start/resolution parameters and
// DomainEscapeError if a trajectory leaves the vertical ball J, which
// signals a box violating its slope bound.
LeafGraph integrate_leaf(const Distribution& h, const BoxDomain& box, const VecN& t,
                         int grid_res = 41, int ode_steps = 256,
                         bool keep_trajectories = false);

// Sup over unmasked lattice points of |Df_t(z) - lambda[H(f_t(z), z)]|, the
// defect of the integrated graph against the distribution's slope field.
// Df_t is measured by short-baseline differences of freshly integrated
// neighbor leaves (baseline `delta`), so for an integrable h this residual
// is limited only by the ODE integration error. Frobenius consistency:
// values above ~1e-6 indicate a non-integrable distribution.
double leaf_tangency_residual(const Distribution& h, const LeafGraph& leaf,
                              double delta = 1e-4);

// Explicit uniform bound on |f^k_t - f^l_t|:
//   lhs = sup over t-samples and lattice of |f^k_t(z) - f^l_t(z)|
//   rhs = r_b/(1 - r_b*C) * (dev_k + dev_l)
// where dev_* = sup |lambda[H_*] - lambda[H_lim]| over samples of B x J and
// C is a sampled Lipschitz constant of lambda[H_lim] (difference quotients,
// 1.1 safety factor). Throws ContractError if the sampled C breaks the
// contraction requirement r_b*C < 1.
struct CauchyReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double c_estimate = 0.0;
  double dev_k = 0.0;  // sampled C0 distance of lambda[h_k] to the limit
  double dev_l = 0.0;
  bool pass = false;   // lhs <= rhs + 1e-8
};
CauchyReport cauchy_bound_check(const Distribution& h_k, const Distribution& h_l,
                                const Distribution& h_lim, const BoxDomain& box,
                                const std::vector<VecN>& t_samples, int grid_res = 41,
                                int ode_steps = 256);

// Per-family-member distance to the limit leaves.
//   sup_distance  = sup over t-samples and lattice of |f^k_t - f^lim_t|
//   c1_diagnostic = sup of |Df^k_t(z) - lambda[H_lim(f^lim_t(z), z)]| with
//                   Df^k_t measured by lattice finite differences
// The *_decreasing flags report a monotone trend (next <= prev + 1e-9).
struct ConvergenceRow {
  int label = 0;
  double sup_distance = 0.0;
  double c1_diagnostic = 0.0;
};
struct ConvergenceSweep {
  std::vector<ConvergenceRow> rows;
  bool sup_decreasing = false;
  bool c1_decreasing = false;
};
ConvergenceSweep convergence_sweep(const std::vector<Distribution>& family,
                                   const std::vector<int>& labels,
                                   const Distribution& limit, const BoxDomain& box,
                                   const std::vector<VecN>& t_samples, int grid_res = 41,
                                   int ode_steps = 256);

// Catalog families on R^2 (vertical axis 0, horizontal axis 1) used by the
// convergence checks. All are rank-1 and hence integrable.
//   slope_wave_distribution(k):  span{ (sin(k y_0)/k, 1) }, slopes -> 0
//   constant_slope_distribution: span{ (c0, 1) }, leaves f_t(z) = t + c0 z
//   horizontal_distribution:     span of the horizontal axes of R^n
Distribution slope_wave_distribution(int k);
Distribution constant_slope_distribution(double c0);
Distribution horizontal_distribution(int n, int q);

}  // namespace lorentz
