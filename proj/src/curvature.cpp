// lorentzlab - curvature, frames, causal classification, geodesic integration

#include "lorentz/curvature.hpp"

#include <cmath>
#include <string>
#include <type_traits>

namespace lorentz {

namespace {

double pair_with(const MatN& gm, const VecN& u, const VecN& w) {
  double s = 0.0;
  for (int i = 0; i < gm.rows; i++)
    for (int j = 0; j < gm.cols; j++) s += gm(i, j) * u[i] * w[j];
  return s;
}

// Shared Gram-Schmidt kernel over any scalar type. Rows of `out` (n x n,
// row-major) receive the frame vectors; per-row signs are written to eps_out.
template <class T>
void gs_frame_at_impl(const MetricField& g, const T* x, int n, T* out, int* eps_out) {
  using std::sqrt;
  T gm[kMaxDim * kMaxDim];
  eval(g, x, gm);
  for (int a = 0; a < n; a++) {
    T u[kMaxDim];
    for (int i = 0; i < n; i++) u[i] = T(i == a ? 1.0 : 0.0);
    for (int b = 0; b < a; b++) {
      T c(0.0);
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) c = c + gm[i * n + j] * u[i] * out[b * n + j];
      if (eps_out[b] < 0) c = -c;
      for (int i = 0; i < n; i++) u[i] = u[i] - c * out[b * n + i];
    }
    T q(0.0);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) q = q + gm[i * n + j] * u[i] * u[j];
    double qv = value(q);
    if (std::fabs(qv) < 1e-12)
      throw DegeneracyError("orthonormal frame: Gram-Schmidt pivot degenerate");
    eps_out[a] = qv < 0.0 ? -1 : 1;
    T norm = sqrt(eps_out[a] < 0 ? -q : q);
    for (int i = 0; i < n; i++) out[a * n + i] = u[i] / norm;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Pointwise metric helpers.

MatN inverse_metric(const MatN& g) {
  const int n = g.rows;
  double vals[kMaxDim], vecs[kMaxDim * kMaxDim];
  sym_eigen(n, g.a.data(), vals, vecs);
  double amax = 0.0, amin = 1e300;
  for (int i = 0; i < n; i++) {
    double v = std::fabs(vals[i]);
    amax = v > amax ? v : amax;
    amin = v < amin ? v : amin;
  }
  if (!(amin > 1e-12 * (amax > 1.0 ? amax : 1.0)))
    throw DegeneracyError("metric matrix is singular or near-singular");
  MatN out(n, n);
  invert_matrix(n, g.a.data(), out.a.data());
  return out;
}

double switch_norm_sq(const MatN& g, const VecN& v) {
  const int n = g.rows;
  double vals[kMaxDim], vecs[kMaxDim * kMaxDim];
  sym_eigen(n, g.a.data(), vals, vecs);
  double s = 0.0;
  for (int k = 0; k < n; k++) {
    double c = 0.0;
    for (int i = 0; i < n; i++) c += vecs[k * n + i] * v[i];
    s += std::fabs(vals[k]) * c * c;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Christoffel symbols.

void christoffel_with_derivatives(const MetricJet& mj, ChristoffelTable* gamma,
                                  std::array<ChristoffelTable, kMaxDim>* dgamma) {
  const int n = mj.n;
  MatN ginv = inverse_metric(mj.value);
  gamma->n = n;
  gamma->flavor = ChristoffelFlavor::coordinate;
  for (int k = 0; k < n; k++) {
    gamma->entries[static_cast<size_t>(k)] = MatN(n, n);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        double s = 0.0;
        for (int m = 0; m < n; m++)
          s += ginv(k, m) * (mj.dg(i)(j, m) + mj.dg(j)(i, m) - mj.dg(m)(i, j));
        gamma->at(k, i, j) = 0.5 * s;
      }
  }
  if (dgamma == nullptr) return;
  if (mj.order < 2)
    throw ContractError("christoffel_with_derivatives: second-order metric jet required");
  // d ginv / dx_l = -ginv (d g / dx_l) ginv
  std::array<MatN, kMaxDim> dginv;
  for (int l = 0; l < n; l++) {
    dginv[static_cast<size_t>(l)] = MatN(n, n);
    for (int k = 0; k < n; k++)
      for (int m = 0; m < n; m++) {
        double s = 0.0;
        for (int a = 0; a < n; a++)
          for (int b = 0; b < n; b++) s += ginv(k, a) * mj.dg(l)(a, b) * ginv(b, m);
        dginv[static_cast<size_t>(l)](k, m) = -s;
      }
  }
  for (int l = 0; l < n; l++) {
    ChristoffelTable& dg_l = (*dgamma)[static_cast<size_t>(l)];
    dg_l.n = n;
    dg_l.flavor = ChristoffelFlavor::coordinate;
    for (int k = 0; k < n; k++) {
      dg_l.entries[static_cast<size_t>(k)] = MatN(n, n);
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
          double s = 0.0;
          for (int m = 0; m < n; m++) {
            s += dginv[static_cast<size_t>(l)](k, m) *
                 (mj.dg(i)(j, m) + mj.dg(j)(i, m) - mj.dg(m)(i, j));
            s += ginv(k, m) * (mj.ddg(l, i)(j, m) + mj.ddg(l, j)(i, m) - mj.ddg(l, m)(i, j));
          }
          dg_l.at(k, i, j) = 0.5 * s;
        }
    }
  }
}

ChristoffelTable christoffel_coordinates(const MetricField& g, const VecN& x, DerivMode mode,
                                         double fd_step) {
  MetricJet mj = evaluate_jet(g, x, 1, mode, fd_step);
  ChristoffelTable gamma;
  christoffel_with_derivatives(mj, &gamma, nullptr);
  return gamma;
}

ChristoffelTable orthonormal_christoffel(const MetricField& g, const Frame& frame, const VecN& x,
                                         double ortho_tol) {
  const int n = g.dim;
  if (frame.n != n || static_cast<int>(frame.fields.size()) != n)
    throw ContractError("orthonormal_christoffel: frame size mismatch");
  double resid = frame_residual(g, frame, x);
  if (!(resid <= ortho_tol))
    throw ContractError("orthonormal_christoffel: frame not orthonormal at point (residual " +
                        std::to_string(resid) + ")");
  MatN gm = eval_value(g, x);
  std::array<VecN, kMaxDim> e;
  for (int a = 0; a < n; a++) e[static_cast<size_t>(a)] = eval_value(frame.fields[static_cast<size_t>(a)], x);
  // brackets[a][b] = [e_a, e_b](x)
  std::array<std::array<VecN, kMaxDim>, kMaxDim> br;
  for (int a = 0; a < n; a++) {
    br[static_cast<size_t>(a)][static_cast<size_t>(a)] = VecN(n);
    for (int b = a + 1; b < n; b++) {
      VecN v = lie_bracket(frame.fields[static_cast<size_t>(a)], frame.fields[static_cast<size_t>(b)], x);
      br[static_cast<size_t>(a)][static_cast<size_t>(b)] = v;
      VecN neg(n);
      for (int i = 0; i < n; i++) neg[i] = -v[i];
      br[static_cast<size_t>(b)][static_cast<size_t>(a)] = neg;
    }
  }
  ChristoffelTable table;
  table.n = n;
  table.flavor = ChristoffelFlavor::orthonormal;
  for (int k = 0; k < n; k++) {
    table.entries[static_cast<size_t>(k)] = MatN(n, n);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        double s = pair_with(gm, br[static_cast<size_t>(i)][static_cast<size_t>(j)], e[static_cast<size_t>(k)]) +
                   pair_with(gm, br[static_cast<size_t>(k)][static_cast<size_t>(i)], e[static_cast<size_t>(j)]) +
                   pair_with(gm, br[static_cast<size_t>(k)][static_cast<size_t>(j)], e[static_cast<size_t>(i)]);
        table.at(k, i, j) = 0.5 * s;
      }
  }
  return table;
}

ChristoffelTable orthonormal_from_coordinate(const MetricField& g, const Frame& frame,
                                             const VecN& x) {
  const int n = g.dim;
  ChristoffelTable coord = christoffel_coordinates(g, x);
  MatN gm = eval_value(g, x);
  std::array<VectorJet, kMaxDim> jets;
  for (int a = 0; a < n; a++) jets[static_cast<size_t>(a)] = evaluate_jet(frame.fields[static_cast<size_t>(a)], x, 1);
  ChristoffelTable table;
  table.n = n;
  table.flavor = ChristoffelFlavor::orthonormal;
  for (int k = 0; k < n; k++) table.entries[static_cast<size_t>(k)] = MatN(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      // nabla_{e_i} e_j in coordinates.
      VecN cov(n);
      for (int k = 0; k < n; k++) {
        double s = 0.0;
        for (int m = 0; m < n; m++) s += jets[static_cast<size_t>(i)].value[m] * jets[static_cast<size_t>(j)].jac(k, m);
        for (int m = 0; m < n; m++)
          for (int p = 0; p < n; p++)
            s += coord.at(k, m, p) * jets[static_cast<size_t>(i)].value[m] * jets[static_cast<size_t>(j)].value[p];
        cov[k] = s;
      }
      for (int k = 0; k < n; k++)
        table.at(k, i, j) = pair_with(gm, cov, jets[static_cast<size_t>(k)].value);
    }
  return table;
}

// ---------------------------------------------------------------------------
// Curvature tensors.

RiemannTensor riemann(const MetricField& g, const VecN& x, DerivMode mode, double fd_step) {
  const int n = g.dim;
  MetricJet mj = evaluate_jet(g, x, 2, mode, fd_step);
  ChristoffelTable gamma;
  std::array<ChristoffelTable, kMaxDim> dgamma;
  christoffel_with_derivatives(mj, &gamma, &dgamma);
  RiemannTensor up;  // up.at(l,i,j,k) = R^l_{.ijk} (see header layout note)
  up.n = n;
  for (int l = 0; l < n; l++)
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++)
        for (int k = 0; k < n; k++) {
          double s = dgamma[static_cast<size_t>(i)].at(l, j, k) - dgamma[static_cast<size_t>(j)].at(l, i, k);
          for (int m = 0; m < n; m++)
            s += gamma.at(l, i, m) * gamma.at(m, j, k) - gamma.at(l, j, m) * gamma.at(m, i, k);
          up.at(l, i, j, k) = s;
        }
  RiemannTensor low;
  low.n = n;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++)
      for (int k = 0; k < n; k++)
        for (int l = 0; l < n; l++) {
          double s = 0.0;
          for (int m = 0; m < n; m++) s += mj.value(m, l) * up.at(m, i, j, k);
          low.at(i, j, k, l) = s;
        }
  return low;
}

MatN ricci(const MetricField& g, const VecN& x, DerivMode mode, double fd_step) {
  const int n = g.dim;
  MetricJet mj = evaluate_jet(g, x, 2, mode, fd_step);
  ChristoffelTable gamma;
  std::array<ChristoffelTable, kMaxDim> dgamma;
  christoffel_with_derivatives(mj, &gamma, &dgamma);
  MatN ric(n, n);
  for (int j = 0; j < n; j++)
    for (int k = 0; k < n; k++) {
      double s = 0.0;
      for (int l = 0; l < n; l++) {
        s += dgamma[static_cast<size_t>(l)].at(l, j, k) - dgamma[static_cast<size_t>(j)].at(l, l, k);
        for (int m = 0; m < n; m++)
          s += gamma.at(l, l, m) * gamma.at(m, j, k) - gamma.at(l, j, m) * gamma.at(m, l, k);
      }
      ric(j, k) = s;
    }
  return ric;
}

double scalar_curv(const MetricField& g, const VecN& x, DerivMode mode, double fd_step) {
  MatN ric = ricci(g, x, mode, fd_step);
  MatN gm = eval_value(g, x);
  MatN ginv = inverse_metric(gm);
  double s = 0.0;
  for (int j = 0; j < gm.rows; j++)
    for (int k = 0; k < gm.cols; k++) s += ginv(j, k) * ric(j, k);
  return s;
}

namespace {

// Kulkarni-Nomizu product in the slot layout of RiemannTensor.
double kn_at(const MatN& h, const MatN& m, int i, int j, int k, int l) {
  return h(i, l) * m(j, k) + h(j, k) * m(i, l) - h(i, k) * m(j, l) - h(j, l) * m(i, k);
}

}  // namespace

RiemannTensor weyl(const MetricField& g, const VecN& x, DerivMode mode, double fd_step) {
  const int n = g.dim;
  if (n < 3) throw ContractError("weyl: requires dimension >= 3");
  if (n == 3) {
    RiemannTensor zero;
    zero.n = 3;
    return zero;
  }
  RiemannTensor riem = riemann(g, x, mode, fd_step);
  MatN ric = ricci(g, x, mode, fd_step);
  MatN gm = eval_value(g, x);
  MatN ginv = inverse_metric(gm);
  double scal = 0.0;
  for (int j = 0; j < n; j++)
    for (int k = 0; k < n; k++) scal += ginv(j, k) * ric(j, k);
  MatN tracefree(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) tracefree(i, j) = ric(i, j) - (scal / n) * gm(i, j);
  RiemannTensor out;
  out.n = n;
  const double c_e = 1.0 / (n - 2);
  const double c_s = scal / (2.0 * n * (n - 1));
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++)
      for (int k = 0; k < n; k++)
        for (int l = 0; l < n; l++)
          out.at(i, j, k, l) = riem.at(i, j, k, l) - c_e * kn_at(tracefree, gm, i, j, k, l) -
                               c_s * kn_at(gm, gm, i, j, k, l);
  return out;
}

EnergyMomentum energy_momentum(const MetricField& g, double lambda, const VecN& x, DerivMode mode,
                               double fd_step) {
  const int n = g.dim;
  MatN ric = ricci(g, x, mode, fd_step);
  MatN gm = eval_value(g, x);
  MatN ginv = inverse_metric(gm);
  double scal = 0.0;
  for (int j = 0; j < n; j++)
    for (int k = 0; k < n; k++) scal += ginv(j, k) * ric(j, k);
  EnergyMomentum em;
  em.n = n;
  em.lambda = lambda;
  em.t = MatN(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) em.t(i, j) = ric(i, j) + (lambda - 0.5 * scal) * gm(i, j);
  return em;
}

MatN contract_frame(const MatN& m, const Frame& frame, const VecN& x) {
  const int n = m.rows;
  std::array<VecN, kMaxDim> e;
  for (int a = 0; a < frame.n; a++) e[static_cast<size_t>(a)] = eval_value(frame.fields[static_cast<size_t>(a)], x);
  MatN out(frame.n, frame.n);
  for (int a = 0; a < frame.n; a++)
    for (int b = 0; b < frame.n; b++) {
      double s = 0.0;
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) s += m(i, j) * e[static_cast<size_t>(a)][i] * e[static_cast<size_t>(b)][j];
      out(a, b) = s;
    }
  return out;
}

CurvatureReport curvature_report(const MetricField& g, const VecN& x, const Frame* frame,
                                 bool with_weyl, DerivMode mode, double fd_step) {
  CurvatureReport rep;
  rep.point = x;
  rep.riem = riemann(g, x, mode, fd_step);
  rep.ricci = ricci(g, x, mode, fd_step);
  rep.scalar = scalar_curv(g, x, mode, fd_step);
  if (with_weyl) {
    rep.weyl_tensor = weyl(g, x, mode, fd_step);
    rep.has_weyl = true;
  }
  if (frame != nullptr) {
    rep.frame_ricci = contract_frame(rep.ricci, *frame, x);
    rep.has_frame_ricci = true;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pointwise operations.

VecN sharp(const MetricField& g, const VecN& x, const VecN& covector) {
  MatN ginv = inverse_metric(eval_value(g, x));
  const int n = ginv.rows;
  VecN out(n);
  for (int i = 0; i < n; i++) {
    double s = 0.0;
    for (int j = 0; j < n; j++) s += ginv(i, j) * covector[j];
    out[i] = s;
  }
  return out;
}

CausalClass causal_classify(const MetricField& g, const VecN& x, const VecN& v,
                            double lightlike_band) {
  bool all_zero = true;
  for (int i = 0; i < v.n; i++)
    if (v[i] != 0.0) all_zero = false;
  if (all_zero) return CausalClass::zero;
  MatN gm = eval_value(g, x);
  double q = pair_with(gm, v, v);
  double band = lightlike_band * switch_norm_sq(gm, v);
  if (std::fabs(q) <= band) return CausalClass::lightlike;
  return q < 0.0 ? CausalClass::timelike : CausalClass::spacelike;
}

// ---------------------------------------------------------------------------
// Frames.

Frame orthonormal_frame(const MetricField& g) {
  const int n = g.dim;
  Frame frame;
  frame.n = n;
  frame.fields.reserve(static_cast<size_t>(n));
  for (int a = 0; a < n; a++) {
    frame.fields.push_back(VectorField::make(n, [g, n, a](const auto* x, auto* out) {
      using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
      T rows[kMaxDim * kMaxDim];
      int eps[kMaxDim];
      gs_frame_at_impl<T>(g, x, n, rows, eps);
      for (int i = 0; i < n; i++) out[i] = rows[a * n + i];
    }));
  }
  // Signs from the chart origin; constant-signature metrics keep them global.
  VecN origin(n);
  MatN rows(n, n);
  int eps[kMaxDim];
  gs_frame_at_impl<double>(g, origin.data(), n, rows.a.data(), eps);
  for (int a = 0; a < n; a++) frame.eps[static_cast<size_t>(a)] = eps[a];
  return frame;
}

void orthonormal_frame_at(const MetricField& g, const VecN& x, MatN* vectors, int* eps) {
  const int n = g.dim;
  *vectors = MatN(n, n);
  try {
    gs_frame_at_impl<double>(g, x.data(), n, vectors->a.data(), eps);
    return;
  } catch (const DegeneracyError&) {
    // fall through to the eigen route
  }
  MatN gm = eval_value(g, x);
  double vals[kMaxDim], vecs[kMaxDim * kMaxDim];
  sym_eigen(n, gm.a.data(), vals, vecs);
  for (int a = 0; a < n; a++) {
    if (std::fabs(vals[a]) < 1e-12)
      throw DegeneracyError("orthonormal frame: metric degenerate at point");
    eps[a] = vals[a] < 0.0 ? -1 : 1;
    double scale = 1.0 / std::sqrt(std::fabs(vals[a]));
    int imax = 0;
    for (int i = 1; i < n; i++)
      if (std::fabs(vecs[a * n + i]) > std::fabs(vecs[a * n + imax])) imax = i;
    double sign = vecs[a * n + imax] < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; i++) (*vectors)(a, i) = sign * scale * vecs[a * n + i];
  }
}

double frame_residual(const MetricField& g, const Frame& frame, const VecN& x) {
  MatN gm = eval_value(g, x);
  double worst = 0.0;
  std::array<VecN, kMaxDim> e;
  for (int a = 0; a < frame.n; a++) e[static_cast<size_t>(a)] = eval_value(frame.fields[static_cast<size_t>(a)], x);
  for (int a = 0; a < frame.n; a++)
    for (int b = 0; b < frame.n; b++) {
      double want = a == b ? static_cast<double>(frame.eps[static_cast<size_t>(a)]) : 0.0;
      double got = pair_with(gm, e[static_cast<size_t>(a)], e[static_cast<size_t>(b)]);
      double dev = std::fabs(got - want);
      worst = dev > worst ? dev : worst;
    }
  return worst;
}

// ---------------------------------------------------------------------------
// Geodesics.

GeodesicPath geodesic_integrate(const MetricField& g, const VecN& p, const VecN& v, double t_max,
                                int steps, DerivMode mode, double fd_step) {
  if (steps < 2) throw ContractError("geodesic_integrate: at least 2 steps required");
  const int n = g.dim;
  auto acc = [&](const VecN& x, const VecN& vel, VecN* out) {
    ChristoffelTable gamma = christoffel_coordinates(g, x, mode, fd_step);
    for (int k = 0; k < n; k++) {
      double s = 0.0;
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) s += gamma.at(k, i, j) * vel[i] * vel[j];
      (*out)[k] = -s;
    }
  };
  GeodesicPath path;
  path.times.reserve(static_cast<size_t>(steps) + 1);
  path.positions.reserve(static_cast<size_t>(steps) + 1);
  path.velocities.reserve(static_cast<size_t>(steps) + 1);
  VecN x = p, vel = v;
  path.times.push_back(0.0);
  path.positions.push_back(x);
  path.velocities.push_back(vel);
  const double dt = t_max / steps;
  for (int s = 0; s < steps; s++) {
    double t_here = dt * s;
    try {
      VecN k1x(n), k1v(n), k2x(n), k2v(n), k3x(n), k3v(n), k4x(n), k4v(n);
      VecN xt(n), vt(n);
      k1x = vel;
      acc(x, vel, &k1v);
      for (int i = 0; i < n; i++) {
        xt[i] = x[i] + 0.5 * dt * k1x[i];
        vt[i] = vel[i] + 0.5 * dt * k1v[i];
      }
      k2x = vt;
      acc(xt, vt, &k2v);
      for (int i = 0; i < n; i++) {
        xt[i] = x[i] + 0.5 * dt * k2x[i];
        vt[i] = vel[i] + 0.5 * dt * k2v[i];
      }
      k3x = vt;
      acc(xt, vt, &k3v);
      for (int i = 0; i < n; i++) {
        xt[i] = x[i] + dt * k3x[i];
        vt[i] = vel[i] + dt * k3v[i];
      }
      k4x = vt;
      acc(xt, vt, &k4v);
      bool ok = true;
      for (int i = 0; i < n; i++) {
        x[i] += dt / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
        vel[i] += dt / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
        ok = ok && std::isfinite(x[i]) && std::isfinite(vel[i]);
      }
      if (!ok) throw BlowUpError("geodesic integration produced non-finite state", t_here);
    } catch (const EvalDomainError&) {
      throw BlowUpError("geodesic integration left the evaluation domain", t_here);
    } catch (const DegeneracyError&) {
      throw BlowUpError("geodesic integration reached a degenerate metric point", t_here);
    }
    path.times.push_back(dt * (s + 1));
    path.positions.push_back(x);
    path.velocities.push_back(vel);
  }
  return path;
}

}  // namespace lorentz
