// lorentzlab - tensor calculus on a metric field
//
// Christoffel symbols (coordinate and orthonormal-frame flavors), Riemann /
// Ricci / scalar / Weyl curvature, energy-momentum tensor, index raising,
// causal classification, orthonormal frames by signature-aware Gram-Schmidt,
// and fixed-step RK4 geodesic integration.
//
// Index layout of the stored (lowered) Riemann tensor:
//   riem(i,j,k,l) is antisymmetric in (i,j) and in (k,l), symmetric under
//   pair exchange (i,j)<->(k,l), and satisfies the cyclic identity
//   riem(i,j,k,l) + riem(j,k,i,l) + riem(k,i,j,l) = 0.
// Ricci is the contraction ric(j,k) = sum_l riem_up(l; l,j,k) of the
// index-raised tensor assembled from coordinate Christoffels; the round unit
// 2-sphere then has scalar curvature +2.

#pragma once

#include <vector>

#include "lorentz/fields.hpp"
#include "lorentz/smallmat.hpp"

namespace lorentz {

enum class ChristoffelFlavor { coordinate, orthonormal };

struct ChristoffelTable {
  int n = 0;
  ChristoffelFlavor flavor = ChristoffelFlavor::coordinate;
  std::array<MatN, kMaxDim> entries{};  // entries[k](i,j) = Gamma^k_ij

  double at(int k, int i, int j) const { return entries[static_cast<size_t>(k)](i, j); }
  double& at(int k, int i, int j) { return entries[static_cast<size_t>(k)](i, j); }
};

struct Frame {
  int n = 0;
  std::vector<VectorField> fields;   // e_0 .. e_{n-1}
  std::array<int, kMaxDim> eps{};    // g(e_i,e_i) = eps_i, entries +-1
};

struct RiemannTensor {
  int n = 0;
  std::array<double, kMaxDim * kMaxDim * kMaxDim * kMaxDim> a{};

  double at(int i, int j, int k, int l) const {
    return a[static_cast<size_t>(((i * kMaxDim + j) * kMaxDim + k) * kMaxDim + l)];
  }
  double& at(int i, int j, int k, int l) {
    return a[static_cast<size_t>(((i * kMaxDim + j) * kMaxDim + k) * kMaxDim + l)];
  }
};

struct CurvatureReport {
  VecN point;
  RiemannTensor riem;  // lowered components
  MatN ricci;          // coordinate components
  double scalar = 0.0;
  bool has_weyl = false;
  RiemannTensor weyl_tensor;
  bool has_frame_ricci = false;
  MatN frame_ricci;  // Ric(e_a, e_b) for a supplied frame
};

struct EnergyMomentum {
  int n = 0;
  MatN t;               // coordinate components of Ric - 1/2 scal g + Lambda g
  double lambda = 0.0;
};

enum class CausalClass { timelike, lightlike, spacelike, zero };

struct GeodesicPath {
  std::vector<double> times;
  std::vector<VecN> positions;
  std::vector<VecN> velocities;
};

// --- Metric-matrix helpers (pointwise) -------------------------------------

// Inverse with a conditioning guard; near-singular input throws DegeneracyError.
MatN inverse_metric(const MatN& g);

// Riemannian norm-square sum |lam_k| <v,u_k>^2 over the eigenbasis of g:
// the norm of the metric with all negative directions sign-flipped.
double switch_norm_sq(const MatN& g, const VecN& v);

// --- Christoffel symbols ----------------------------------------------------

ChristoffelTable christoffel_coordinates(const MetricField& g, const VecN& x,
                                         DerivMode mode = DerivMode::dual,
                                         double fd_step = 1e-5);

// Coordinate Christoffels together with their coordinate derivatives
// dgamma[l].at(k,i,j) = d Gamma^k_ij / dx_l, from a second-order metric jet.
void christoffel_with_derivatives(const MetricJet& mj, ChristoffelTable* gamma,
                                  std::array<ChristoffelTable, kMaxDim>* dgamma);

// Frame-flavored Christoffels via the bracket (Koszul) formula
//   2 Gamma^k_ij = g([e_i,e_j],e_k) + g([e_k,e_i],e_j) + g([e_k,e_j],e_i),
// pairing convention Gamma^k_ij = g(nabla_{e_i} e_j, e_k); the table is then
// antisymmetric under (j,k) exchange: Gamma^k_ij = -Gamma^j_ik.
ChristoffelTable orthonormal_christoffel(const MetricField& g, const Frame& frame, const VecN& x,
                                         double ortho_tol = 1e-10);

// Same table assembled by the coordinate route: g(nabla_{e_i} e_j, e_k) from
// coordinate Christoffels and frame Jacobians (cross-check oracle).
ChristoffelTable orthonormal_from_coordinate(const MetricField& g, const Frame& frame,
                                             const VecN& x);

// --- Curvature ---------------------------------------------------------------

RiemannTensor riemann(const MetricField& g, const VecN& x, DerivMode mode = DerivMode::dual,
                      double fd_step = 1e-5);
MatN ricci(const MetricField& g, const VecN& x, DerivMode mode = DerivMode::dual,
           double fd_step = 1e-5);
double scalar_curv(const MetricField& g, const VecN& x, DerivMode mode = DerivMode::dual,
                   double fd_step = 1e-5);

// Weyl tensor in the same slot layout; n = 3 returns the zero tensor, n < 3
// throws ContractError.
RiemannTensor weyl(const MetricField& g, const VecN& x, DerivMode mode = DerivMode::dual,
                   double fd_step = 1e-5);

EnergyMomentum energy_momentum(const MetricField& g, double lambda, const VecN& x,
                               DerivMode mode = DerivMode::dual, double fd_step = 1e-5);

// Full report; frame may be null. Weyl included for n >= 3 when requested.
CurvatureReport curvature_report(const MetricField& g, const VecN& x, const Frame* frame,
                                 bool with_weyl, DerivMode mode = DerivMode::dual,
                                 double fd_step = 1e-5);

// Bilinear contraction of a coordinate 2-tensor with frame vectors at x:
// out(a,b) = sum_ij m_ij e_a^i e_b^j.
MatN contract_frame(const MatN& m, const Frame& frame, const VecN& x);

// --- Pointwise linear-algebra style operations ------------------------------

VecN sharp(const MetricField& g, const VecN& x, const VecN& covector);

CausalClass causal_classify(const MetricField& g, const VecN& x, const VecN& v,
                            double lightlike_band = 1e-10);

// --- Orthonormal frames ------------------------------------------------------

// Signature-aware Gram-Schmidt on the coordinate basis (d/dx_0 processed
// first), as evaluable fields; degenerate pivot at an evaluation point throws
// DegeneracyError.
Frame orthonormal_frame(const MetricField& g);

// Pointwise frame: Gram-Schmidt, falling back to the eigenbasis of g(x) when
// a pivot degenerates. Rows of `vectors` are the frame vectors; negative
// directions come first in the eigen fallback. Orientation deterministic.
void orthonormal_frame_at(const MetricField& g, const VecN& x, MatN* vectors, int* eps);

// Max deviation |g(e_i,e_j) - eps_i delta_ij| of a frame at x.
double frame_residual(const MetricField& g, const Frame& frame, const VecN& x);

// --- Geodesics ----------------------------------------------------------------

// Fixed-step RK4 integration of x'' + Gamma(x', x') = 0. Samples at every
// step including t = 0. Non-finite state throws BlowUpError carrying the last
// valid time.
GeodesicPath geodesic_integrate(const MetricField& g, const VecN& p, const VecN& v, double t_max,
                                int steps, DerivMode mode = DerivMode::dual,
                                double fd_step = 1e-5);

}  // namespace lorentz
