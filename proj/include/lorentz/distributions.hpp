// lorentzlab - plane distributions on a chart: graph maps, twistedness,
// orthogonal complements, and a local twisting construction.
//
// A Distribution is a rank-k subbundle of the tangent bundle given by k
// spanning vector fields on the chart. All pointwise operations validate
// linear independence of the spanning vectors where they evaluate.

#pragma once

#include <vector>

#include "lorentz/curvature.hpp"
#include "lorentz/fields.hpp"
#include "lorentz/smallmat.hpp"

namespace lorentz {

struct Distribution {
  int n = 0;     // ambient dimension
  int rank = 0;  // number of spanning fields
  std::vector<VectorField> spans;
};

// Build a distribution from spanning fields (ambient dimension taken from the
// first field). Throws ContractError if the list is empty, a field dimension
// disagrees, or rank > dimension.
Distribution make_distribution(std::vector<VectorField> spans);

// Spanning vectors evaluated at x, one per row (rank x n). Throws
// DegeneracyError if the smallest singular value is <= 1e-10, i.e. the
// spanning fields fail to be linearly independent at x.
MatN distribution_basis(const Distribution& d, const VecN& x);

// ---------------------------------------------------------------------------
// Graph maps: a distribution Z transverse to V is, near a point where it is
// also complementary to V, the graph of a linear map W_x -> V_x. The matrix
// is expressed in the spanning bases of W and V.

struct GraphMap {
  VecN x;
  int w_rank = 0;
  int v_rank = 0;
  // matrix(a, i) = coefficient of V-spanning vector a in the image of the
  // i-th W-spanning vector.
  MatN matrix;
  // images(i, :) = image of the i-th W-spanning vector as an ambient vector.
  MatN images;
};

// The unique linear map L: W_x -> V_x with w + L(w) in Z_x for all w in W_x.
// Preconditions: W_x + V_x and Z_x + V_x are both direct-sum decompositions
// of the tangent space at x. Throws TransversalityError when ranks do not
// add up to n or the deciding linear system has condition number > 1e12.
GraphMap graph_map(const Distribution& z, const Distribution& w, const Distribution& v,
                   const VecN& x);

// ---------------------------------------------------------------------------
// Twistedness: the bracket obstruction to integrability. For spanning fields
// h_i of H, the value on (h_i, h_j) is the projection of [h_i, h_j](x) onto a
// chosen complement C along H, expressed in C's spanning basis. The value at
// x does not depend on the choice of spanning fields (only on their values
// at x), and is antisymmetric in the pair.

struct TwistValue {
  VecN x;
  int n = 0;
  int h_rank = 0;
  int c_rank = 0;
  std::array<MatN, kMaxDim> comp{};  // comp[a](i, j): coefficient of c_a in Tw(h_i, h_j)
  MatN c_basis;                      // rows: C spanning vectors at x

  double coeff(int a, int i, int j) const { return comp[static_cast<size_t>(a)](i, j); }
  // Tw(h_i, h_j) as an ambient vector (lies in C_x).
  VecN value_ambient(int i, int j) const;
  // max |coeff| over all entries; zero iff the distribution is
  // bracket-closed at x.
  double max_abs() const;
};

// Throws TransversalityError when rank(H) + rank(C) != n or the stacked
// basis matrix at x has condition number > 1e12.
TwistValue twistedness(const Distribution& h, const Distribution& c, const VecN& x);

// ---------------------------------------------------------------------------
// Metric twist/shape pairings for a distribution U and a metric g. For
// u, v in U_x and w orthogonal to U_x:
//   tw = g([u^, v^](x), w)                      (antisymmetric in u, v)
//   sw = g((nabla_{u^} v^ + nabla_{v^} u^)(x), w)  (symmetric in u, v)
// where u^, v^ are smooth extensions of u, v as sections of U; both values
// are independent of the chosen extensions because w is orthogonal to U.
// This overload extends by constant coefficients in U's spanning basis.
// Throws ContractError if u or v does not lie in U_x or w is not orthogonal
// to U_x (residuals >= 1e-10), DegeneracyError if g restricted to U_x is
// degenerate.
void tw_sw_metric(const MetricField& g, const Distribution& u_dist, const VecN& x,
                  const VecN& u, const VecN& v, const VecN& w,
                  double* tw, double* sw);

// Same pairings evaluated from caller-supplied field extensions (the caller
// guarantees both fields are sections of the same distribution and w is
// orthogonal to it at x; orthogonality against the two field values at x is
// still checked).
void tw_sw_metric_fields(const MetricField& g, const VectorField& u_field,
                         const VectorField& v_field, const VecN& x, const VecN& w,
                         double* tw, double* sw);

// ---------------------------------------------------------------------------
// Orthogonal complement of H_x with respect to g: returns n - rank(H) basis
// rows (Euclidean-orthonormal). Throws DegeneracyError when g restricted to
// H_x is degenerate (e.g. H contains a lightlike direction orthogonal to all
// of H), in which case the complement fails to be complementary.
MatN orthogonal_complement(const MetricField& g, const Distribution& h, const VecN& x);

// ---------------------------------------------------------------------------
// Local twisting: given a g-spacelike distribution H of rank >= 2 on a chart
// with an indefinite metric, modify the first spanning field inside a
// compactly supported bump around x,
//   e_1  ->  e_1 - c_twist * bump * e_n,
// where e_n is a coordinate field transverse to H at x and the bump profile
// satisfies bump(x) = 0 and d_x bump(e_2) = 1. The returned distribution
// agrees with H outside the bump support (unit ball around x) and its
// twistedness at x, measured against the returned complement, gains exactly
// c_twist * e_n(x) on the first spanning pair. The result stays spacelike
// for small c_twist; the verified threshold is found by bisection over 64
// deterministic sample points of the bump support.

struct TwistResult {
  Distribution twisted;      // same rank as input; first spanning field modified
  Distribution complement;   // coordinate-field completion of H at x (rank n - k)
  int twist_axis = 0;        // coordinate axis of the transverse field e_n
  ScalarField bump;          // the compactly supported profile used
  double spacelike_threshold = 0.0;  // spacelike verified on samples for c below this
};

// Throws ContractError when the metric is Riemannian (index 0), rank(H) < 2,
// or H is not spacelike on the bump support samples.
TwistResult twist_locally(const MetricField& g, const Distribution& h, const VecN& x,
                          double c_twist);

}  // namespace lorentz
