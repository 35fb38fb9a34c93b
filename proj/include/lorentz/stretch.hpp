// lorentzlab - switch/stretch deformations of a metric along a timelike
// distribution: the stretched metric as an evaluable field, seeded adapted
// frames, the case-by-case stretched-Christoffel table, skew normal forms,
// the b/beta twist tensors with sampled niceness certificates, Ricci
// asymptotics under a shrinking stretch factor, and the graph-slope bound
// for nontimelike hyperplanes.

#pragma once

#include <vector>

#include "lorentz/curvature.hpp"
#include "lorentz/distributions.hpp"
#include "lorentz/fields.hpp"
#include "lorentz/smallmat.hpp"

namespace lorentz {

// A metric g, a g-timelike distribution V whose rank equals the metric
// index, and a strictly positive factor field f.
struct StretchSpec {
  MetricField g;
  Distribution v;
  ScalarField f;
};

// Checks the spec invariants at x: dimensions agree, rank(V) == index(g),
// g restricted to V is negative definite, f(x) > 0. Throws ContractError.
void validate_stretch_spec(const StretchSpec& spec, const VecN& x);

// Riemannian companion metric at x: the sign of g on V is flipped, the
// g-orthogonal complement of V is untouched.
MatN switch_metric(const StretchSpec& spec, const VecN& x);

// The stretched metric (-(1/f^2) g_V) + g_H as an evaluable field, where
// g_V / g_H are the blocks of g along V and its g-orthogonal complement.
// The index equals the base index. Evaluation throws ContractError at
// points where f <= 0 or V fails to be timelike.
MetricField stretch(const StretchSpec& spec);

// Bar map at x: u -> f(x) * u_V + u_H, the pointwise isometry from g onto
// the stretched metric (g(u,u) equals the stretched pairing of the images).
VecN bar_map(const StretchSpec& spec, const VecN& x, const VecN& u);

// Orthonormal frame built by Gram-Schmidt over the seed fields first
// (seeds that are dependent on the already-accepted vectors are skipped),
// then completed with coordinate axes. Signs are sampled at `anchor`; a
// null pivot at an evaluation point throws DegeneracyError.
Frame seeded_frame(const MetricField& g, const std::vector<VectorField>& seeds,
                   const VecN& anchor);

// Frame adapted to the stretch: the first rank(V) fields are scaled by f,
// the rest pass through. Orthonormal for stretch(spec) whenever `adapted`
// is g-orthonormal with its leading fields spanning V.
Frame barred_frame(const StretchSpec& spec, const Frame& adapted);

// Orthonormal Christoffels of the stretched metric in the barred frame,
// rewritten case by case from the base table. `gamma` must be orthonormal
// flavor in a frame whose first q vectors span V; f_value and df_in_frame
// are the factor value and its frame-direction derivatives at the point;
// eps are the frame signs. Throws ContractError on an inconsistent
// partition or a nonpositive factor.
ChristoffelTable stretched_christoffel_table(const ChristoffelTable& gamma, int q,
                                             double f_value, const VecN& df_in_frame,
                                             const int* eps);

// Normal form of a skew-symmetric m x m matrix: Euclidean-orthonormal basis
// rows [u_1..u_r, w_1..w_r, (kernel row when m is odd)] with r = floor(m/2)
// in which the matrix becomes +lambda_i at (i, r+i) and -lambda_i at
// (r+i, i). lambda entries are >= 0, sorted descending, zero-padded to
// length r. basis * A * basis^T is the block form.
struct SkewNormalForm {
  int m = 0;
  int r = 0;
  VecN lambda;
  MatN basis;  // rows are the adapted basis vectors
};

SkewNormalForm skew_normal_form(const MatN& a);

// The b and beta tensors of a corank-one spacelike distribution H in a
// Lorentzian metric, in an adapted orthonormal frame (row 0 = timelike unit
// normal to H, rows 1..n-1 spanning H) and as ambient coordinate bilinear
// forms. twist(i,j) holds the pairing of the bracket of H-frame vectors
// i+1, j+1 with the normal; lambda is its skew spectrum.
struct BBeta {
  int n = 0;
  VecN x;
  MatN frame_rows;                 // n x n, row a = frame vector e_a
  std::array<int, kMaxDim> eps{};  // frame signs (-1, 1, ..., 1)
  MatN twist;                      // (n-1) x (n-1), antisymmetric
  MatN b;                          // frame components, n x n
  MatN beta;                       // frame components, n x n
  MatN b_coord;                    // ambient coordinate components
  MatN beta_coord;                 // ambient coordinate components
  VecN lambda;                     // skew spectrum, descending
};

// Throws UnsupportedIndexError unless index(g) == 1, ContractError unless
// H has corank one and is spacelike at x.
BBeta b_beta(const MetricField& g, const Distribution& h, const VecN& x);

// One sample point of a niceness certificate: the minima of b(v,v),
// beta(v,v), and the momentum quantity -g(#beta(v,.), #beta(v,.)) over
// sampled causal vectors v of unit switch norm, together with the worst
// slack of each analytic lower bound from the proof inequalities
// (b >= |lambda|^2, beta >= b, momentum >= 8 |lambda|^4 v_0^2).
struct NicenessSample {
  VecN x;
  VecN lambda;
  MatN b;
  MatN beta;
  double min_b = 0.0;
  double min_beta = 0.0;
  double min_momentum = 0.0;
  double slack_b_bound = 0.0;
  double slack_beta_bound = 0.0;
  double slack_momentum_bound = 0.0;
};

// Certificate constants are the minima over all samples when positive and
// -infinity when the corresponding predicate fails. The dominant flag holds
// when both the semi-dominant and causal-convergence flags hold.
struct NicenessCertificate {
  std::vector<NicenessSample> samples;
  double c_weak = 0.0;
  double c_semidom = 0.0;
  double c_causal = 0.0;
  bool weak_nice = false;
  bool semidom_nice = false;
  bool causal_nice = false;
  bool dominant_nice = false;
};

// Samples `trials` causal directions of unit switch norm per point (cone
// interior and cone boundary) and aggregates the certificate. Throws
// ContractError on an empty point list or fewer than two trials.
NicenessCertificate niceness_certificate(const MetricField& g, const Distribution& h,
                                         const std::vector<VecN>& points, int trials);

// One row of the stretch-factor sweep: the frame Ricci of the stretched
// metric and the residuals against (1/(4 eps^2)) b on the V/H blocks, plus
// the raw magnitude on mixed pairs.
struct StretchAsymptoticsRow {
  double eps = 0.0;
  MatN ric_frame;
  double r_hh = 0.0;
  double r_vv = 0.0;
  double r_mix = 0.0;
};

struct StretchAsymptotics {
  VecN x;
  MatN b;     // components in the adapted base frame
  MatN beta;  // components in the adapted base frame
  std::vector<StretchAsymptoticsRow> rows;
  bool hh_bounded = false;
  bool vv_bounded = false;
  bool mix_bounded = false;  // eps * r_mix stays bounded
};

// For each eps in eps_list (positive, strictly descending; ContractError
// otherwise) builds stretch(g, eps, V), computes the Ricci tensor in the
// barred adapted frame, and reports the residuals. The adapted frame is
// seeded from the V spans; b is computed from H in that same frame.
StretchAsymptotics ricci_asymptotics(const MetricField& g, const Distribution& h,
                                     const Distribution& v, const VecN& x,
                                     const std::vector<double>& eps_list);

// Dichotomy for a hyperplane P complementary to V at x: either P contains a
// vector that is timelike for stretch(g, f_value, V) (witness returned), or
// the graph slope of P over the g-orthogonal complement H satisfies
// |lambda[P](w)|_{g_V} <= f_value * |w|_{g_H} for every w; operator_norm is
// the largest ratio and slack = f_value - operator_norm.
struct KeyLemmaResult {
  bool contains_timelike = false;
  VecN witness;
  bool bound_holds = false;
  double operator_norm = 0.0;
  double slack = 0.0;
};

// Throws TransversalityError when P fails to be complementary to V at x.
KeyLemmaResult key_lemma_bound(const MetricField& g, const Distribution& v,
                               const Distribution& h, double f_value,
                               const Distribution& p, const VecN& x);

}  // namespace lorentz
