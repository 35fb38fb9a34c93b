#include "lorentz/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lorentz/sampling.hpp"
#include "lorentz/threads.hpp"

namespace lorentz {

namespace {

constexpr double kBallTol = 1e-12;
constexpr double kEscapeTol = 1e-9;
constexpr double kPassTol = 1e-8;
constexpr double kTrendTol = 1e-9;
constexpr int kNormSamples = 256;
constexpr int kLipSamples = 64;
constexpr long long kMaxLattice = 1 << 22;

// Largest singular value of a rows x cols matrix.
double op_norm(const MatN& m) {
  const int r = m.rows;
  const int c = m.cols;
  double gram[kMaxDim * kMaxDim];
  for (int i = 0; i < c; i++)
    for (int j = 0; j < c; j++) {
      double acc = 0.0;
      for (int k = 0; k < r; k++) acc += m(k, i) * m(k, j);
      gram[i * c + j] = acc;
    }
  double vals[kMaxDim], vecs[kMaxDim * kMaxDim];
  sym_eigen(c, gram, vals, vecs);
  return std::sqrt(std::max(0.0, vals[c - 1]));
}

// Slope evaluation lambda[H] against the vertical/horizontal axis split.
struct SlopeField {
  const Distribution* h = nullptr;
  Distribution w_axes;
  Distribution v_axes;
  int p = 0;
  int q = 0;

  SlopeField(const Distribution& dist, const BoxDomain& box) : h(&dist), p(box.p), q(box.q) {
    const int n = box.p + box.q;
    std::vector<VectorField> w, v;
    for (int i = 0; i < box.q; i++) v.push_back(coordinate_field(n, i));
    for (int i = box.q; i < n; i++) w.push_back(coordinate_field(n, i));
    w_axes = make_distribution(w);
    v_axes = make_distribution(v);
  }

  // alpha: vertical offset from the box center; z: horizontal offset.
  MatN at(const BoxDomain& box, const VecN& alpha, const VecN& z) const {
    VecN y = box.center;
    for (int a = 0; a < q; a++) y[a] += alpha[a];
    for (int i = 0; i < p; i++) y[q + i] += z[i];
    return graph_map(*h, w_axes, v_axes, y).matrix;
  }
};

VecN ode_rhs(const SlopeField& slope, const BoxDomain& box, double s, const VecN& z,
             const VecN& alpha) {
  VecN zs(box.p);
  for (int i = 0; i < box.p; i++) zs[i] = s * z[i];
  MatN lam = slope.at(box, alpha, zs);
  VecN out(box.q);
  for (int a = 0; a < box.q; a++) {
    double acc = 0.0;
    for (int i = 0; i < box.p; i++) acc += lam(a, i) * z[i];
    out[a] = acc;
  }
  return out;
}

// Integrates alpha'(s) = lambda[H(alpha, s z)](z) from alpha(0) = t over
// s in [0, 1]. Appends the nodes to *nodes when given.
VecN integrate_ray(const SlopeField& slope, const BoxDomain& box, const VecN& t, const VecN& z,
                   int steps, std::vector<VecN>* nodes) {
  const int q = box.q;
  VecN alpha = t;
  if (nodes) nodes->push_back(alpha);
  const double h = 1.0 / steps;
  for (int step = 0; step < steps; step++) {
    const double s = step * h;
    VecN k1 = ode_rhs(slope, box, s, z, alpha);
    VecN a2(q), a3(q), a4(q);
    for (int i = 0; i < q; i++) a2[i] = alpha[i] + 0.5 * h * k1[i];
    VecN k2 = ode_rhs(slope, box, s + 0.5 * h, z, a2);
    for (int i = 0; i < q; i++) a3[i] = alpha[i] + 0.5 * h * k2[i];
    VecN k3 = ode_rhs(slope, box, s + 0.5 * h, z, a3);
    for (int i = 0; i < q; i++) a4[i] = alpha[i] + h * k3[i];
    VecN k4 = ode_rhs(slope, box, s + h, z, a4);
    for (int i = 0; i < q; i++)
      alpha[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (norm2(alpha) > box.r_j + kEscapeTol)
      throw DomainEscapeError(
          "integrate_leaf: trajectory left the vertical ball (slope bound of the box violated)");
    if (nodes) nodes->push_back(alpha);
  }
  return alpha;
}

void check_start(const BoxDomain& box, const VecN& t) {
  if (t.n != box.q) throw ContractError("integrate_leaf: start value has wrong dimension");
  if (norm2(t) > box.r_i() + kBallTol)
    throw ContractError("integrate_leaf: start value outside the inner vertical ball");
}

long long lattice_size(const BoxDomain& box, int grid_res) {
  long long total = 1;
  for (int i = 0; i < box.p; i++) {
    total *= grid_res;
    if (total > kMaxLattice) throw ContractError("integrate_leaf: lattice too large");
  }
  return total;
}

VecN lattice_point(const BoxDomain& box, int grid_res, long long index) {
  const double step = 2.0 * box.r_b / (grid_res - 1);
  VecN z(box.p);
  for (int axis = 0; axis < box.p; axis++) {
    z[axis] = -box.r_b + static_cast<double>(index % grid_res) * step;
    index /= grid_res;
  }
  return z;
}

// Sample points of B x J via per-block low-discrepancy ball points.
VecN box_sample(const BoxDomain& box, long long index) {
  const int n = box.p + box.q;
  VecN y(n);
  VecN vert = sampling::ball_point(box.q, index);
  VecN horiz = sampling::ball_point(box.p, index + 4096);
  for (int a = 0; a < box.q; a++) y[a] = box.r_j * vert[a];
  for (int i = 0; i < box.p; i++) y[box.q + i] = box.r_b * horiz[i];
  return y;
}

MatN slope_at_offset(const SlopeField& slope, const BoxDomain& box, const VecN& y) {
  VecN alpha(box.q), z(box.p);
  for (int a = 0; a < box.q; a++) alpha[a] = y[a];
  for (int i = 0; i < box.p; i++) z[i] = y[box.q + i];
  return slope.at(box, alpha, z);
}

double slope_distance(const SlopeField& sa, const SlopeField& sb, const BoxDomain& box,
                      const VecN& y) {
  MatN ma = slope_at_offset(sa, box, y);
  MatN mb = slope_at_offset(sb, box, y);
  MatN d(box.q, box.p);
  for (int a = 0; a < box.q; a++)
    for (int i = 0; i < box.p; i++) d(a, i) = ma(a, i) - mb(a, i);
  return op_norm(d);
}

}  // namespace

void validate_box(const BoxDomain& box) {
  if (box.p < 1 || box.q < 1) throw ContractError("box: p and q must be positive");
  if (box.center.n != box.p + box.q)
    throw ContractError("box: center dimension must equal p + q");
  if (!(box.r_b > 0.0) || !(box.r_j > 0.0)) throw ContractError("box: radii must be positive");
  if (box.a < 0.0 || box.c_lip < 0.0)
    throw ContractError("box: slope bound and Lipschitz constant must be nonnegative");
  if (!(box.r_b * box.c_lip < 1.0))
    throw ContractError("box: contraction invariant r_b * C < 1 violated");
  if (!(box.a * box.r_b < box.r_j))
    throw ContractError("box: containment invariant a * r_b < r_j violated");
}

LeafGraph integrate_leaf(const Distribution& h, const BoxDomain& box, const VecN& t,
                         int grid_res, int ode_steps, bool keep_trajectories) {
  validate_box(box);
  check_start(box, t);
  if (h.n != box.p + box.q)
    throw ContractError("integrate_leaf: distribution dimension must match the box");
  if (grid_res < 2) throw ContractError("integrate_leaf: grid resolution must be >= 2");
  if (ode_steps < 1) throw ContractError("integrate_leaf: ODE steps must be >= 1");

  SlopeField slope(h, box);
  const long long total = lattice_size(box, grid_res);

  LeafGraph leaf;
  leaf.box = box;
  leaf.t = t;
  leaf.grid_res = grid_res;
  leaf.ode_steps = ode_steps;
  leaf.grid.resize(static_cast<size_t>(total));
  leaf.inside.assign(static_cast<size_t>(total), 0);
  leaf.values.assign(static_cast<size_t>(total), VecN(box.q));
  if (keep_trajectories) leaf.trajectories.resize(static_cast<size_t>(total));

  parallel_for(0, static_cast<int>(total), [&](int i) {
    VecN z = lattice_point(box, grid_res, i);
    leaf.grid[static_cast<size_t>(i)] = z;
    if (norm2(z) > box.r_b + kBallTol) return;
    leaf.inside[static_cast<size_t>(i)] = 1;
    std::vector<VecN>* nodes =
        keep_trajectories ? &leaf.trajectories[static_cast<size_t>(i)] : nullptr;
    leaf.values[static_cast<size_t>(i)] = integrate_ray(slope, box, t, z, ode_steps, nodes);
  });
  return leaf;
}

double leaf_tangency_residual(const Distribution& h, const LeafGraph& leaf, double delta) {
  const BoxDomain& box = leaf.box;
  if (h.n != box.p + box.q)
    throw ContractError("tangency residual: distribution dimension must match the box");
  if (!(delta > 0.0)) throw ContractError("tangency residual: baseline must be positive");
  SlopeField slope(h, box);
  const int total = static_cast<int>(leaf.grid.size());

  std::vector<double> res(static_cast<size_t>(total), 0.0);
  parallel_for(0, total, [&](int i) {
    if (!leaf.inside[static_cast<size_t>(i)]) return;
    const VecN& z = leaf.grid[static_cast<size_t>(i)];
    MatN d(box.q, box.p);
    for (int axis = 0; axis < box.p; axis++) {
      VecN zp = z, zm = z;
      zp[axis] += delta;
      zm[axis] -= delta;
      VecN col(box.q);
      if (norm2(zp) <= box.r_b + kBallTol && norm2(zm) <= box.r_b + kBallTol) {
        VecN fp = integrate_ray(slope, box, leaf.t, zp, leaf.ode_steps, nullptr);
        VecN fm = integrate_ray(slope, box, leaf.t, zm, leaf.ode_steps, nullptr);
        for (int a = 0; a < box.q; a++) col[a] = (fp[a] - fm[a]) / (2.0 * delta);
      } else {
        // second-order one-sided stencil pointing into the ball
        const double sgn = (norm2(zp) > box.r_b + kBallTol) ? -1.0 : 1.0;
        VecN z1 = z, z2 = z;
        z1[axis] += sgn * delta;
        z2[axis] += sgn * 2.0 * delta;
        VecN f0 = leaf.values[static_cast<size_t>(i)];
        VecN f1 = integrate_ray(slope, box, leaf.t, z1, leaf.ode_steps, nullptr);
        VecN f2 = integrate_ray(slope, box, leaf.t, z2, leaf.ode_steps, nullptr);
        for (int a = 0; a < box.q; a++)
          col[a] = sgn * (-3.0 * f0[a] + 4.0 * f1[a] - f2[a]) / (2.0 * delta);
      }
      for (int a = 0; a < box.q; a++) d(a, axis) = col[a];
    }
    MatN lam = slope.at(box, leaf.values[static_cast<size_t>(i)], z);
    for (int a = 0; a < box.q; a++)
      for (int axis = 0; axis < box.p; axis++) d(a, axis) -= lam(a, axis);
    res[static_cast<size_t>(i)] = op_norm(d);
  });
  double out = 0.0;
  for (double r : res) out = std::max(out, r);
  return out;
}

CauchyReport cauchy_bound_check(const Distribution& h_k, const Distribution& h_l,
                                const Distribution& h_lim, const BoxDomain& box,
                                const std::vector<VecN>& t_samples, int grid_res,
                                int ode_steps) {
  validate_box(box);
  if (t_samples.empty()) throw ContractError("cauchy bound: need at least one start value");
  for (const VecN& t : t_samples) check_start(box, t);

  SlopeField sk(h_k, box);
  SlopeField sl(h_l, box);
  SlopeField slim(h_lim, box);

  CauchyReport rep;
  for (long long i = 0; i < kNormSamples; i++) {
    VecN y = box_sample(box, i);
    rep.dev_k = std::max(rep.dev_k, slope_distance(sk, slim, box, y));
    rep.dev_l = std::max(rep.dev_l, slope_distance(sl, slim, box, y));
  }

  // Lipschitz constant of the limit slope from difference quotients:
  // consecutive sample pairs plus short per-axis baselines.
  const int n = box.p + box.q;
  const double short_base = 1e-3 * std::min(box.r_b, box.r_j);
  auto quotient = [&](const VecN& y0, const VecN& y1) {
    VecN d(n);
    for (int j = 0; j < n; j++) d[j] = y1[j] - y0[j];
    const double dist = norm2(d);
    if (dist <= 1e-12) return 0.0;
    MatN m0 = slope_at_offset(slim, box, y0);
    MatN m1 = slope_at_offset(slim, box, y1);
    MatN dm(box.q, box.p);
    for (int a = 0; a < box.q; a++)
      for (int c = 0; c < box.p; c++) dm(a, c) = m1(a, c) - m0(a, c);
    return op_norm(dm) / dist;
  };
  double quot = 0.0;
  for (long long i = 0; i < kLipSamples; i++) {
    VecN y0 = box_sample(box, i);
    quot = std::max(quot, quotient(y0, box_sample(box, i + 1)));
    for (int axis = 0; axis < n; axis++) {
      VecN y2 = y0;
      y2[axis] += short_base;
      quot = std::max(quot, quotient(y0, y2));
    }
  }
  rep.c_estimate = 1.1 * quot;
  if (!(box.r_b * rep.c_estimate < 1.0))
    throw ContractError("cauchy bound: sampled Lipschitz constant breaks r_b * C < 1");

  for (const VecN& t : t_samples) {
    LeafGraph fk = integrate_leaf(h_k, box, t, grid_res, ode_steps);
    LeafGraph fl = integrate_leaf(h_l, box, t, grid_res, ode_steps);
    for (size_t i = 0; i < fk.values.size(); i++) {
      if (!fk.inside[i]) continue;
      VecN d(box.q);
      for (int a = 0; a < box.q; a++) d[a] = fk.values[i][a] - fl.values[i][a];
      rep.lhs = std::max(rep.lhs, norm2(d));
    }
  }
  rep.rhs = box.r_b / (1.0 - box.r_b * rep.c_estimate) * (rep.dev_k + rep.dev_l);
  rep.pass = rep.lhs <= rep.rhs + kPassTol;
  return rep;
}

ConvergenceSweep convergence_sweep(const std::vector<Distribution>& family,
                                   const std::vector<int>& labels, const Distribution& limit,
                                   const BoxDomain& box, const std::vector<VecN>& t_samples,
                                   int grid_res, int ode_steps) {
  validate_box(box);
  if (family.empty()) throw ContractError("convergence sweep: empty family");
  if (family.size() != labels.size())
    throw ContractError("convergence sweep: family and label counts differ");
  if (t_samples.empty()) throw ContractError("convergence sweep: need at least one start value");

  SlopeField slim(limit, box);

  // limit leaves and limit slopes on the lattice, one per start value
  std::vector<LeafGraph> lim_leaves;
  std::vector<std::vector<MatN>> lim_slopes;
  for (const VecN& t : t_samples) {
    LeafGraph leaf = integrate_leaf(limit, box, t, grid_res, ode_steps);
    std::vector<MatN> slopes(leaf.grid.size());
    for (size_t i = 0; i < leaf.grid.size(); i++)
      if (leaf.inside[i]) slopes[i] = slim.at(box, leaf.values[i], leaf.grid[i]);
    lim_leaves.push_back(std::move(leaf));
    lim_slopes.push_back(std::move(slopes));
  }

  const double step = 2.0 * box.r_b / (grid_res - 1);
  ConvergenceSweep sweep;
  for (size_t m = 0; m < family.size(); m++) {
    ConvergenceRow row;
    row.label = labels[m];
    for (size_t ts = 0; ts < t_samples.size(); ts++) {
      const LeafGraph& lim_leaf = lim_leaves[ts];
      LeafGraph fk = integrate_leaf(family[m], box, t_samples[ts], grid_res, ode_steps);
      // strides of the row-major lattice per horizontal axis
      long long strides[kMaxDim];
      long long acc = 1;
      for (int axis = 0; axis < box.p; axis++) {
        strides[axis] = acc;
        acc *= grid_res;
      }
      for (size_t i = 0; i < fk.values.size(); i++) {
        if (!fk.inside[i]) continue;
        VecN d(box.q);
        for (int a = 0; a < box.q; a++) d[a] = fk.values[i][a] - lim_leaf.values[i][a];
        row.sup_distance = std::max(row.sup_distance, norm2(d));

        // lattice finite differences for Df^k
        MatN df(box.q, box.p);
        bool usable = true;
        for (int axis = 0; axis < box.p && usable; axis++) {
          const long long idx = static_cast<long long>(i);
          const long long coord = (idx / strides[axis]) % grid_res;
          auto cell_inside = [&](long long j) {
            return j >= 0 && j < static_cast<long long>(fk.inside.size()) &&
                   fk.inside[static_cast<size_t>(j)];
          };
          const long long prev = idx - strides[axis];
          const long long next = idx + strides[axis];
          if (coord > 0 && coord + 1 < grid_res && cell_inside(prev) && cell_inside(next)) {
            for (int a = 0; a < box.q; a++)
              df(a, axis) = (fk.values[static_cast<size_t>(next)][a] -
                             fk.values[static_cast<size_t>(prev)][a]) /
                            (2.0 * step);
          } else if (coord + 2 < grid_res && cell_inside(next) &&
                     cell_inside(idx + 2 * strides[axis])) {
            const size_t j1 = static_cast<size_t>(next);
            const size_t j2 = static_cast<size_t>(idx + 2 * strides[axis]);
            for (int a = 0; a < box.q; a++)
              df(a, axis) =
                  (-3.0 * fk.values[i][a] + 4.0 * fk.values[j1][a] - fk.values[j2][a]) /
                  (2.0 * step);
          } else if (coord >= 2 && cell_inside(prev) && cell_inside(idx - 2 * strides[axis])) {
            const size_t j1 = static_cast<size_t>(prev);
            const size_t j2 = static_cast<size_t>(idx - 2 * strides[axis]);
            for (int a = 0; a < box.q; a++)
              df(a, axis) =
                  (3.0 * fk.values[i][a] - 4.0 * fk.values[j1][a] + fk.values[j2][a]) /
                  (2.0 * step);
          } else {
            usable = false;
          }
        }
        if (!usable) continue;
        const MatN& lam = lim_slopes[ts][i];
        for (int a = 0; a < box.q; a++)
          for (int axis = 0; axis < box.p; axis++) df(a, axis) -= lam(a, axis);
        row.c1_diagnostic = std::max(row.c1_diagnostic, op_norm(df));
      }
    }
    sweep.rows.push_back(row);
  }

  sweep.sup_decreasing = true;
  sweep.c1_decreasing = true;
  for (size_t i = 1; i < sweep.rows.size(); i++) {
    if (sweep.rows[i].sup_distance > sweep.rows[i - 1].sup_distance + kTrendTol)
      sweep.sup_decreasing = false;
    if (sweep.rows[i].c1_diagnostic > sweep.rows[i - 1].c1_diagnostic + kTrendTol)
      sweep.c1_decreasing = false;
  }
  return sweep;
}

Distribution slope_wave_distribution(int k) {
  if (k < 1) throw ContractError("slope wave: index must be >= 1");
  VectorField span = VectorField::make(2, [k](const auto* y, auto* out) {
    using std::sin;
    using T = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
    out[0] = sin(y[0] * static_cast<double>(k)) * (1.0 / static_cast<double>(k));
    out[1] = T(1.0);
  });
  return make_distribution({span});
}

Distribution constant_slope_distribution(double c0) {
  VecN w(2);
  w[0] = c0;
  w[1] = 1.0;
  return make_distribution({constant_vector(2, w)});
}

Distribution horizontal_distribution(int n, int q) {
  if (n < 2 || q < 1 || q >= n)
    throw ContractError("horizontal distribution: need 1 <= q < n");
  std::vector<VectorField> spans;
  for (int i = q; i < n; i++) spans.push_back(coordinate_field(n, i));
  return make_distribution(spans);
}

}  // namespace lorentz
