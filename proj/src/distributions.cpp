// lorentzlab - plane distributions: graph maps, twistedness, metric
// twist/shape pairings, orthogonal complements, and local twisting.

#include "lorentz/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "lorentz/sampling.hpp"

namespace lorentz {

namespace {

constexpr double kIndependenceTol = 1e-10;
constexpr double kConditionLimit = 1e12;
constexpr double kResidualTol = 1e-10;

double condition_estimate(int n, const double* m) {
  double smin = 0.0;
  double smax = 0.0;
  singular_range(n, n, m, &smin, &smax);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

// g(u, v) for a metric matrix.
double pair_metric(const MatN& gm, const VecN& u, const VecN& v) {
  double s = 0.0;
  for (int i = 0; i < gm.rows; i++)
    for (int j = 0; j < gm.cols; j++) s += u[i] * gm(i, j) * v[j];
  return s;
}

// Coefficients of vec in the rows of basis (least squares via the Gram
// matrix); *residual receives the Euclidean norm of the unexplained part.
VecN membership_coefficients(const MatN& basis, const VecN& vec, double* residual) {
  const int k = basis.rows;
  const int n = basis.cols;
  MatN gram(k, k);
  VecN rhs(k);
  for (int i = 0; i < k; i++) {
    for (int j = 0; j < k; j++) {
      double s = 0.0;
      for (int r = 0; r < n; r++) s += basis(i, r) * basis(j, r);
      gram(i, j) = s;
    }
    double s = 0.0;
    for (int r = 0; r < n; r++) s += basis(i, r) * vec[r];
    rhs[i] = s;
  }
  solve_inplace(k, 1, gram.a.data(), rhs.a.data());
  VecN rem = vec;
  for (int i = 0; i < k; i++)
    for (int r = 0; r < n; r++) rem[r] -= rhs[i] * basis(i, r);
  rem.n = n;
  *residual = norm2(rem);
  rhs.n = k;
  return rhs;
}

// nabla_{u} s at x from the field value u, the Jacobian of s, the value of s,
// and the coordinate Christoffels: (nabla_u s)^k = ds^k/dx_m u^m + G^k_mp u^m s^p.
VecN covariant_directional(const ChristoffelTable& gamma, int n, const VecN& u,
                           const MatN& jac_s, const VecN& s_val) {
  VecN out(n);
  for (int k = 0; k < n; k++) {
    double acc = 0.0;
    for (int m = 0; m < n; m++) {
      acc += jac_s(k, m) * u[m];
      for (int p = 0; p < n; p++) acc += gamma.at(k, m, p) * u[m] * s_val[p];
    }
    out[k] = acc;
  }
  return out;
}

// Eigenvalues of g restricted to the rows of `basis`; returns the restricted
// matrix eigenvalues ascending in vals (k of them).
void restricted_metric_eigen(const MatN& basis, const MatN& gm, double* vals) {
  const int k = basis.rows;
  const int n = basis.cols;
  MatN restricted(k, k);
  for (int i = 0; i < k; i++)
    for (int j = 0; j < k; j++) {
      double s = 0.0;
      for (int a = 0; a < n; a++)
        for (int b = 0; b < n; b++) s += basis(i, a) * gm(a, b) * basis(j, b);
      restricted(i, j) = s;
    }
  double vecs[kMaxDim * kMaxDim];
  sym_eigen(k, restricted.a.data(), vals, vecs);
}

}  // namespace

Distribution make_distribution(std::vector<VectorField> spans) {
  if (spans.empty()) throw ContractError("make_distribution: no spanning fields");
  Distribution d;
  d.n = spans[0].dim;
  d.rank = static_cast<int>(spans.size());
  if (d.rank > d.n)
    throw ContractError("make_distribution: more spanning fields than the ambient dimension");
  for (const VectorField& f : spans)
    if (f.dim != d.n) throw ContractError("make_distribution: field dimensions disagree");
  d.spans = std::move(spans);
  return d;
}

MatN distribution_basis(const Distribution& d, const VecN& x) {
  if (x.n != d.n) throw ContractError("distribution_basis: point dimension disagrees");
  MatN basis(d.rank, d.n);
  for (int i = 0; i < d.rank; i++) {
    VecN row = eval_value(d.spans[static_cast<size_t>(i)], x);
    for (int j = 0; j < d.n; j++) basis(i, j) = row[j];
  }
  double smin = 0.0;
  double smax = 0.0;
  singular_range(d.rank, d.n, basis.a.data(), &smin, &smax);
  if (!(smin > kIndependenceTol))
    throw DegeneracyError("distribution_basis: spanning fields dependent at the point");
  return basis;
}

// --- Graph maps --------------------------------------------------------------

GraphMap graph_map(const Distribution& z, const Distribution& w, const Distribution& v,
                   const VecN& x) {
  const int n = z.n;
  if (w.n != n || v.n != n) throw ContractError("graph_map: ambient dimensions disagree");
  if (w.rank + v.rank != n)
    throw TransversalityError("graph_map: W and V ranks do not sum to the ambient dimension");
  if (z.rank != w.rank)
    throw TransversalityError("graph_map: Z and W ranks differ, Z is not a graph over W");

  MatN bz = distribution_basis(z, x);
  MatN bw = distribution_basis(w, x);
  MatN bv = distribution_basis(v, x);

  MatN stacked(n, n);
  for (int i = 0; i < w.rank; i++)
    for (int j = 0; j < n; j++) stacked(i, j) = bw(i, j);
  for (int i = 0; i < v.rank; i++)
    for (int j = 0; j < n; j++) stacked(w.rank + i, j) = bv(i, j);
  if (condition_estimate(n, stacked.a.data()) > kConditionLimit)
    throw TransversalityError("graph_map: W and V are not complementary at x");

  // Columns: Z-spanning vectors, then negated V-spanning vectors. Solving
  // against w gives w = sum_c a_c z_c - sum_a b_a v_a, so the image of w in
  // V_x (the unique v with w + v in Z_x) has V-coefficients b.
  MatN sys(n, n);
  for (int col = 0; col < z.rank; col++)
    for (int r = 0; r < n; r++) sys(r, col) = bz(col, r);
  for (int col = 0; col < v.rank; col++)
    for (int r = 0; r < n; r++) sys(r, z.rank + col) = -bv(col, r);
  if (condition_estimate(n, sys.a.data()) > kConditionLimit)
    throw TransversalityError("graph_map: Z is not transverse to V at x");

  MatN rhs(n, w.rank);
  for (int i = 0; i < w.rank; i++)
    for (int r = 0; r < n; r++) rhs(r, i) = bw(i, r);
  solve_inplace(n, w.rank, sys.a.data(), rhs.a.data());

  GraphMap out;
  out.x = x;
  out.w_rank = w.rank;
  out.v_rank = v.rank;
  out.matrix = MatN(v.rank, w.rank);
  out.images = MatN(w.rank, n);
  for (int i = 0; i < w.rank; i++)
    for (int a = 0; a < v.rank; a++) {
      double coeff = rhs(z.rank + a, i);
      out.matrix(a, i) = coeff;
      for (int col = 0; col < n; col++) out.images(i, col) += coeff * bv(a, col);
    }

  // Invariant: each w_i + image_i lies in Z_x.
  for (int i = 0; i < w.rank; i++) {
    VecN shifted(n);
    for (int col = 0; col < n; col++) shifted[col] = bw(i, col) + out.images(i, col);
    double residual = 0.0;
    (void)membership_coefficients(bz, shifted, &residual);
    if (!(residual < kResidualTol * std::max(1.0, norm2(shifted))))
      throw TransversalityError("graph_map: graph residual check failed");
  }
  return out;
}

// --- Twistedness -------------------------------------------------------------

VecN TwistValue::value_ambient(int i, int j) const {
  VecN out(n);
  for (int a = 0; a < c_rank; a++) {
    double coef = coeff(a, i, j);
    for (int col = 0; col < n; col++) out[col] += coef * c_basis(a, col);
  }
  return out;
}

double TwistValue::max_abs() const {
  double m = 0.0;
  for (int a = 0; a < c_rank; a++)
    for (int i = 0; i < h_rank; i++)
      for (int j = 0; j < h_rank; j++) m = std::max(m, std::fabs(coeff(a, i, j)));
  return m;
}

TwistValue twistedness(const Distribution& h, const Distribution& c, const VecN& x) {
  const int n = h.n;
  if (c.n != n) throw ContractError("twistedness: ambient dimensions disagree");
  if (h.rank + c.rank != n)
    throw TransversalityError("twistedness: H and C ranks do not sum to the ambient dimension");

  MatN bh = distribution_basis(h, x);
  MatN bc = distribution_basis(c, x);

  // Columns of the decomposition system: H-spanning then C-spanning vectors.
  MatN sys(n, n);
  for (int col = 0; col < h.rank; col++)
    for (int r = 0; r < n; r++) sys(r, col) = bh(col, r);
  for (int col = 0; col < c.rank; col++)
    for (int r = 0; r < n; r++) sys(r, h.rank + col) = bc(col, r);
  if (condition_estimate(n, sys.a.data()) > kConditionLimit)
    throw TransversalityError("twistedness: H and C are not complementary at x");

  TwistValue tv;
  tv.x = x;
  tv.n = n;
  tv.h_rank = h.rank;
  tv.c_rank = c.rank;
  tv.c_basis = bc;
  for (int a = 0; a < c.rank; a++) tv.comp[static_cast<size_t>(a)] = MatN(h.rank, h.rank);

  for (int i = 0; i < h.rank; i++)
    for (int j = i + 1; j < h.rank; j++) {
      VecN br = lie_bracket(h.spans[static_cast<size_t>(i)], h.spans[static_cast<size_t>(j)], x);
      MatN lu = sys;
      VecN sol = br;
      solve_inplace(n, 1, lu.a.data(), sol.a.data());
      for (int a = 0; a < c.rank; a++) {
        tv.comp[static_cast<size_t>(a)](i, j) = sol[h.rank + a];
        tv.comp[static_cast<size_t>(a)](j, i) = -sol[h.rank + a];
      }
    }
  return tv;
}

// --- Metric twist/shape pairings ----------------------------------------------

void tw_sw_metric(const MetricField& g, const Distribution& u_dist, const VecN& x,
                  const VecN& u, const VecN& v, const VecN& w,
                  double* tw, double* sw) {
  const int n = u_dist.n;
  if (g.dim != n || x.n != n || u.n != n || v.n != n || w.n != n)
    throw ContractError("tw_sw_metric: dimensions disagree");

  MatN basis = distribution_basis(u_dist, x);
  double res_u = 0.0;
  double res_v = 0.0;
  VecN a = membership_coefficients(basis, u, &res_u);
  VecN b = membership_coefficients(basis, v, &res_v);
  if (!(res_u < kResidualTol * std::max(1.0, norm2(u))))
    throw ContractError("tw_sw_metric: u does not lie in the distribution at x");
  if (!(res_v < kResidualTol * std::max(1.0, norm2(v))))
    throw ContractError("tw_sw_metric: v does not lie in the distribution at x");

  MatN gm = eval_value(g, x);
  for (int i = 0; i < u_dist.rank; i++) {
    VecN row(n);
    for (int col = 0; col < n; col++) row[col] = basis(i, col);
    double pairing = pair_metric(gm, row, w);
    if (!(std::fabs(pairing) < kResidualTol * std::max(1.0, norm2(row) * norm2(w))))
      throw ContractError("tw_sw_metric: w is not orthogonal to the distribution at x");
  }

  double vals[kMaxDim];
  restricted_metric_eigen(basis, gm, vals);
  double max_abs = 0.0;
  for (int i = 0; i < u_dist.rank; i++) max_abs = std::max(max_abs, std::fabs(vals[i]));
  for (int i = 0; i < u_dist.rank; i++)
    if (!(std::fabs(vals[i]) > 1e-10 * std::max(1.0, max_abs)))
      throw DegeneracyError("tw_sw_metric: metric degenerate on the distribution at x");

  // Constant-coefficient extensions u^ = sum a_i s_i, v^ = sum b_j s_j:
  // [u^, v^] = sum_{i<j} (a_i b_j - a_j b_i) [s_i, s_j].
  VecN bracket_sum(n);
  for (int i = 0; i < u_dist.rank; i++)
    for (int j = i + 1; j < u_dist.rank; j++) {
      double coef = a[i] * b[j] - a[j] * b[i];
      if (coef == 0.0) continue;
      VecN br = lie_bracket(u_dist.spans[static_cast<size_t>(i)],
                            u_dist.spans[static_cast<size_t>(j)], x);
      for (int col = 0; col < n; col++) bracket_sum[col] += coef * br[col];
    }
  *tw = pair_metric(gm, bracket_sum, w);

  ChristoffelTable gamma = christoffel_coordinates(g, x);
  std::array<VectorJet, kMaxDim> jets;
  for (int i = 0; i < u_dist.rank; i++)
    jets[static_cast<size_t>(i)] = evaluate_jet(u_dist.spans[static_cast<size_t>(i)], x, 1);

  VecN deriv_sum(n);
  for (int i = 0; i < u_dist.rank; i++)
    for (int j = 0; j < u_dist.rank; j++) {
      double coef = a[i] * b[j];
      if (coef == 0.0) continue;
      const VectorJet& ji = jets[static_cast<size_t>(i)];
      const VectorJet& jj = jets[static_cast<size_t>(j)];
      VecN fwd = covariant_directional(gamma, n, ji.value, jj.jac, jj.value);
      VecN bwd = covariant_directional(gamma, n, jj.value, ji.jac, ji.value);
      for (int col = 0; col < n; col++) deriv_sum[col] += coef * (fwd[col] + bwd[col]);
    }
  *sw = pair_metric(gm, deriv_sum, w);
}

void tw_sw_metric_fields(const MetricField& g, const VectorField& u_field,
                         const VectorField& v_field, const VecN& x, const VecN& w,
                         double* tw, double* sw) {
  const int n = g.dim;
  if (u_field.dim != n || v_field.dim != n || x.n != n || w.n != n)
    throw ContractError("tw_sw_metric: dimensions disagree");

  MatN gm = eval_value(g, x);
  VectorJet ju = evaluate_jet(u_field, x, 1);
  VectorJet jv = evaluate_jet(v_field, x, 1);
  if (!(std::fabs(pair_metric(gm, ju.value, w)) <
        kResidualTol * std::max(1.0, norm2(ju.value) * norm2(w))))
    throw ContractError("tw_sw_metric: w is not orthogonal to u at x");
  if (!(std::fabs(pair_metric(gm, jv.value, w)) <
        kResidualTol * std::max(1.0, norm2(jv.value) * norm2(w))))
    throw ContractError("tw_sw_metric: w is not orthogonal to v at x");

  VecN br = lie_bracket(u_field, v_field, x);
  *tw = pair_metric(gm, br, w);

  ChristoffelTable gamma = christoffel_coordinates(g, x);
  VecN fwd = covariant_directional(gamma, n, ju.value, jv.jac, jv.value);
  VecN bwd = covariant_directional(gamma, n, jv.value, ju.jac, ju.value);
  VecN sum(n);
  for (int col = 0; col < n; col++) sum[col] = fwd[col] + bwd[col];
  *sw = pair_metric(gm, sum, w);
}

// --- Orthogonal complement ----------------------------------------------------

MatN orthogonal_complement(const MetricField& g, const Distribution& h, const VecN& x) {
  const int n = h.n;
  if (g.dim != n) throw ContractError("orthogonal_complement: dimensions disagree");
  const int k = h.rank;
  MatN basis = distribution_basis(h, x);
  MatN gm = eval_value(g, x);

  double vals[kMaxDim];
  restricted_metric_eigen(basis, gm, vals);
  double max_abs = 0.0;
  for (int i = 0; i < k; i++) max_abs = std::max(max_abs, std::fabs(vals[i]));
  for (int i = 0; i < k; i++)
    if (!(std::fabs(vals[i]) > 1e-10 * std::max(1.0, max_abs)))
      throw DegeneracyError("orthogonal_complement: metric degenerate on the plane at x");

  // Null space of the constraint matrix A = basis * g (k rows): the smallest
  // n - k eigenvectors of A^T A span the complement.
  MatN a(k, n);
  for (int i = 0; i < k; i++)
    for (int j = 0; j < n; j++) {
      double s = 0.0;
      for (int m = 0; m < n; m++) s += basis(i, m) * gm(m, j);
      a(i, j) = s;
    }
  double ata[kMaxDim * kMaxDim];
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      double s = 0.0;
      for (int r = 0; r < k; r++) s += a(r, i) * a(r, j);
      ata[i * n + j] = s;
    }
  double evals[kMaxDim];
  double evecs[kMaxDim * kMaxDim];
  sym_eigen(n, ata, evals, evecs);

  MatN out(n - k, n);
  for (int r = 0; r < n - k; r++)
    for (int j = 0; j < n; j++) out(r, j) = evecs[r * n + j];

  for (int i = 0; i < k; i++)
    for (int r = 0; r < n - k; r++) {
      double s = 0.0;
      for (int p = 0; p < n; p++)
        for (int q = 0; q < n; q++) s += basis(i, p) * gm(p, q) * out(r, q);
      if (!(std::fabs(s) < kResidualTol))
        throw DegeneracyError("orthogonal_complement: complement fails orthogonality check");
    }
  return out;
}

// --- Local twisting ------------------------------------------------------------

namespace {

// C^2 plateau in the squared radius: 1 on [0, 1/4], 0 from 1 onward, quintic
// smoothstep in between (value and first two derivatives match at both ends).
template <class S>
S plateau_profile(const S& rho) {
  double r = value(rho);
  if (r <= 0.25) return S(1.0);
  if (r >= 1.0) return S(0.0);
  S t = (rho - 0.25) * (1.0 / 0.75);
  S s = t * t * t * (t * (t * 6.0 - 15.0) + 10.0);
  return 1.0 - s;
}

// Bump profile ell(y - x) * plateau(|y - x|^2) with ell linear; vanishes at
// the center, has gradient grad_dir there, and is supported in the unit ball.
ScalarField make_bump(int n, const VecN& center, const VecN& grad_dir) {
  return ScalarField::make(n, [n, center, grad_dir](const auto* y) {
    using S = std::decay_t<decltype(y[0])>;
    S rho(0.0);
    S ell(0.0);
    for (int i = 0; i < n; i++) {
      S d = y[i] - center[i];
      rho = rho + d * d;
      ell = ell + grad_dir[i] * d;
    }
    return ell * plateau_profile(rho);
  });
}

// Positive definiteness of g restricted to the given rows.
bool rows_spacelike(const MatN& rows, const MatN& gm) {
  double smin = 0.0;
  double smax = 0.0;
  singular_range(rows.rows, rows.cols, rows.a.data(), &smin, &smax);
  if (!(smin > kIndependenceTol)) return false;
  double vals[kMaxDim];
  restricted_metric_eigen(rows, gm, vals);
  double max_abs = 0.0;
  for (int i = 0; i < rows.rows; i++) max_abs = std::max(max_abs, std::fabs(vals[i]));
  return vals[0] > 1e-12 * std::max(1.0, max_abs);
}

}  // namespace

TwistResult twist_locally(const MetricField& g, const Distribution& h, const VecN& x,
                          double c_twist) {
  const int n = h.n;
  if (g.dim != n || x.n != n) throw ContractError("twist_locally: dimensions disagree");
  if (g.index == 0)
    throw ContractError("twist_locally: metric must be indefinite");
  if (h.rank < 2) throw ContractError("twist_locally: rank must be at least 2");

  MatN bh = distribution_basis(h, x);

  // Complete H_x with coordinate axes by greedy pivoting: Euclidean
  // Gram-Schmidt on the spanning rows, then repeatedly add the axis with the
  // largest residual. The last axis chosen plays the transverse field e_n.
  double q[kMaxDim][kMaxDim];
  int nq = 0;
  auto gs_insert = [&](const double* row) {
    double tmp[kMaxDim];
    for (int i = 0; i < n; i++) tmp[i] = row[i];
    for (int r = 0; r < nq; r++) {
      double proj = 0.0;
      for (int i = 0; i < n; i++) proj += q[r][i] * tmp[i];
      for (int i = 0; i < n; i++) tmp[i] -= proj * q[r][i];
    }
    double nrm = 0.0;
    for (int i = 0; i < n; i++) nrm += tmp[i] * tmp[i];
    nrm = std::sqrt(nrm);
    if (nrm < 1e-14) return false;
    for (int i = 0; i < n; i++) q[nq][i] = tmp[i] / nrm;
    nq++;
    return true;
  };
  for (int i = 0; i < h.rank; i++) {
    double row[kMaxDim];
    for (int j = 0; j < n; j++) row[j] = bh(i, j);
    if (!gs_insert(row))
      throw DegeneracyError("twist_locally: spanning fields dependent at x");
  }
  int axes[kMaxDim];
  int picked = 0;
  bool used[kMaxDim] = {false};
  for (int step = 0; step < n - h.rank; step++) {
    int best_axis = -1;
    double best_residual = -1.0;
    for (int axis = 0; axis < n; axis++) {
      if (used[axis]) continue;
      double captured = 0.0;
      for (int r = 0; r < nq; r++) captured += q[r][axis] * q[r][axis];
      double residual = 1.0 - captured;
      if (residual > best_residual) {
        best_residual = residual;
        best_axis = axis;
      }
    }
    double row[kMaxDim] = {0.0};
    row[best_axis] = 1.0;
    if (!gs_insert(row))
      throw DegeneracyError("twist_locally: could not complete the plane to a frame");
    axes[picked++] = best_axis;
    used[best_axis] = true;
  }
  const int twist_axis = axes[picked - 1];

  // Bump normalization: gradient a with a . e_2(x) = 1 along the second
  // spanning vector.
  VecN e2x(n);
  for (int j = 0; j < n; j++) e2x[j] = bh(1, j);
  double e2_nsq = dot(e2x, e2x);
  VecN grad_dir(n);
  for (int j = 0; j < n; j++) grad_dir[j] = e2x[j] / e2_nsq;
  ScalarField bump = make_bump(n, x, grad_dir);

  VectorField first = h.spans[0];
  std::vector<VectorField> twisted_spans;
  twisted_spans.reserve(static_cast<size_t>(h.rank));
  twisted_spans.push_back(VectorField::make(
      n, [first, bump, c_twist, twist_axis](const auto* y, auto* out) {
        eval(first, y, out);
        auto b = eval(bump, y);
        out[twist_axis] = out[twist_axis] - c_twist * b;
      }));
  for (int i = 1; i < h.rank; i++) twisted_spans.push_back(h.spans[static_cast<size_t>(i)]);

  std::vector<VectorField> complement_spans;
  complement_spans.reserve(static_cast<size_t>(n - h.rank));
  for (int i = 0; i < picked; i++) complement_spans.push_back(coordinate_field(n, axes[i]));

  TwistResult result;
  result.twisted = make_distribution(std::move(twisted_spans));
  result.complement = make_distribution(std::move(complement_spans));
  result.twist_axis = twist_axis;
  result.bump = bump;

  // Spacelike threshold: sample the bump support, precompute the pieces that
  // enter the twisted first row (linear in the coefficient), and bisect.
  constexpr int kSamples = 64;
  struct SampleData {
    MatN rows;     // spanning rows of H at the sample
    MatN gm;       // metric at the sample
    double bval;   // bump value
  };
  std::vector<SampleData> samples(kSamples);
  for (int s = 0; s < kSamples; s++) {
    VecN offset = sampling::ball_point(n, s);
    VecN y(n);
    for (int i = 0; i < n; i++) y[i] = x[i] + offset[i];
    SampleData& sd = samples[static_cast<size_t>(s)];
    sd.rows = MatN(h.rank, n);
    for (int i = 0; i < h.rank; i++) {
      VecN row = eval_value(h.spans[static_cast<size_t>(i)], y);
      for (int j = 0; j < n; j++) sd.rows(i, j) = row[j];
    }
    sd.gm = eval_value(g, y);
    sd.bval = eval_value(bump, y);
    if (!rows_spacelike(sd.rows, sd.gm))
      throw ContractError("twist_locally: distribution is not spacelike on the bump support");
  }
  auto spacelike_at = [&](double c) {
    for (const SampleData& sd : samples) {
      MatN rows = sd.rows;
      rows(0, twist_axis) -= c * sd.bval;
      if (!rows_spacelike(rows, sd.gm)) return false;
    }
    return true;
  };
  double lo = 0.0;
  double hi = 1.0;
  constexpr double kCap = 1048576.0;
  while (hi < kCap && spacelike_at(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  if (hi >= kCap && spacelike_at(hi)) {
    result.spacelike_threshold = hi;
  } else {
    for (int it = 0; it < 80; it++) {
      double mid = 0.5 * (lo + hi);
      if (spacelike_at(mid))
        lo = mid;
      else
        hi = mid;
    }
    result.spacelike_threshold = lo;
  }
  return result;
}

}  // namespace lorentz
