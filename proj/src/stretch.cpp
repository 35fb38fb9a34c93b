// lorentzlab - switch/stretch metric deformations, adapted frames, the
// stretched-Christoffel table, b/beta twist tensors with niceness
// certificates, Ricci asymptotics in the stretch factor, and the
// graph-slope bound for nontimelike hyperplanes.

#include "lorentz/stretch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lorentz/sampling.hpp"
#include "lorentz/threads.hpp"

namespace lorentz {

namespace {

constexpr double kNullPivotTol = 1e-12;
constexpr double kSeedSkipTol = 1e-8;   // Euclidean residual below which a seed is dependent
constexpr double kSkewTol = 1e-10;      // max allowed |A + A^T| entry
constexpr double kReconTol = 1e-10;     // skew normal form self-check
constexpr double kEigenBand = 1e-12;    // relative band for sign decisions on eigenvalues
constexpr double kSlackBand = 1e-12;    // numerical band on the graph-slope certificate

double pair_rows(const MatN& gm, const double* u, const double* v, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) acc += u[i] * gm(i, j) * v[j];
  return acc;
}

double quad_form(const MatN& m, const double* v, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) acc += v[i] * m(i, j) * v[j];
  return acc;
}

// Core of the stretched metric: out = G + (1/f^2 - 1) K with
// K = G Bv^T Gv^{-1} Bv G, the g-symmetric form equal to g on V and zero on
// the g-orthogonal complement. Templated so jets flow through.
template <class T>
void stretched_metric_eval(const MetricField& g, const std::vector<VectorField>& spans,
                           const ScalarField& f, int n, int q, const T* y, T* out) {
  T gm[kMaxDim * kMaxDim];
  eval(g, y, gm);
  T bv[kMaxDim * kMaxDim];
  for (int a = 0; a < q; a++) eval(spans[static_cast<size_t>(a)], y, bv + a * n);
  // A = Bv G (q x n), Gv = A Bv^T (q x q)
  T amat[kMaxDim * kMaxDim];
  for (int a = 0; a < q; a++)
    for (int c = 0; c < n; c++) {
      T s(0.0);
      for (int m = 0; m < n; m++) s = s + bv[a * n + m] * gm[m * n + c];
      amat[a * n + c] = s;
    }
  T gv[kMaxDim * kMaxDim];
  for (int a = 0; a < q; a++)
    for (int b = 0; b < q; b++) {
      T s(0.0);
      for (int c = 0; c < n; c++) s = s + amat[a * n + c] * bv[b * n + c];
      gv[a * q + b] = s;
    }
  double gvd[kMaxDim * kMaxDim];
  for (int i = 0; i < q * q; i++) gvd[i] = value(gv[i]);
  if (metric_index(q, gvd) != q)
    throw ContractError("stretch: V not g-timelike at evaluation point");
  T fs = eval(f, y);
  if (!(value(fs) > 0.0)) throw ContractError("stretch: factor not positive at evaluation point");
  // X = Gv^{-1} A
  T xm[kMaxDim * kMaxDim];
  for (int i = 0; i < q * n; i++) xm[i] = amat[i];
  solve_inplace(q, n, gv, xm);
  T coef = T(1.0) / (fs * fs) - T(1.0);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      T k(0.0);
      for (int r = 0; r < q; r++) k = k + amat[r * n + i] * xm[r * n + j];
      out[i * n + j] = gm[i * n + j] + coef * k;
    }
}

// Gram-Schmidt frame rows at y: seed fields first (dependent seeds skipped),
// then coordinate axes. Signs are written for every accepted row.
template <class T>
void seeded_rows_at(const MetricField& g, const std::vector<VectorField>& seeds, int n,
                    const T* y, T* rows, int* signs) {
  using std::sqrt;
  T gm[kMaxDim * kMaxDim];
  eval(g, y, gm);
  int got = 0;
  T cand[kMaxDim];
  auto consider = [&]() {
    double orig = 0.0;
    for (int i = 0; i < n; i++) {
      double c = value(cand[i]);
      orig += c * c;
    }
    for (int b = 0; b < got; b++) {
      T c(0.0);
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) c = c + gm[i * n + j] * cand[i] * rows[b * n + j];
      if (signs[b] < 0) c = -c;
      for (int i = 0; i < n; i++) cand[i] = cand[i] - c * rows[b * n + i];
    }
    double resid = 0.0;
    for (int i = 0; i < n; i++) {
      double c = value(cand[i]);
      resid += c * c;
    }
    if (resid <= kSeedSkipTol * kSeedSkipTol * std::max(1.0, orig)) return;  // dependent
    T s(0.0);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) s = s + gm[i * n + j] * cand[i] * cand[j];
    double sv = value(s);
    if (std::fabs(sv) < kNullPivotTol)
      throw DegeneracyError("seeded frame: null Gram-Schmidt pivot");
    signs[got] = sv < 0.0 ? -1 : 1;
    T norm = sqrt(signs[got] < 0 ? -s : s);
    for (int i = 0; i < n; i++) rows[got * n + i] = cand[i] / norm;
    got++;
  };
  for (const VectorField& seed : seeds) {
    if (got == n) break;
    eval(seed, y, cand);
    consider();
  }
  for (int a = 0; a < n && got < n; a++) {
    for (int i = 0; i < n; i++) cand[i] = T(i == a ? 1.0 : 0.0);
    consider();
  }
  if (got < n) throw DegeneracyError("seeded frame: could not complete a frame");
}

// Euclidean projection of `v` off the accepted rows, in place; returns the
// remaining norm.
double project_off(const double* rows, int count, int n, double* v) {
  for (int b = 0; b < count; b++) {
    double c = 0.0;
    for (int i = 0; i < n; i++) c += v[i] * rows[b * n + i];
    for (int i = 0; i < n; i++) v[i] -= c * rows[b * n + i];
  }
  double nn = 0.0;
  for (int i = 0; i < n; i++) nn += v[i] * v[i];
  return std::sqrt(nn);
}

bool bounded_trend(const std::vector<double>& vals) {
  for (size_t k = 0; k + 1 < vals.size(); k++)
    if (!(vals[k + 1] <= 1.5 * vals[k] + 1e-9)) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Spec validation, switch, stretch, bar map.

void validate_stretch_spec(const StretchSpec& spec, const VecN& x) {
  const int n = spec.g.dim;
  if (n < 1 || spec.v.n != n || spec.f.dim != n)
    throw ContractError("stretch spec: dimension mismatch");
  if (x.n != n) throw ContractError("stretch spec: point dimension mismatch");
  if (spec.v.rank != spec.g.index)
    throw ContractError("stretch spec: V rank must equal the metric index");
  const int q = spec.v.rank;
  MatN bv = distribution_basis(spec.v, x);
  MatN gm = eval_value(spec.g, x);
  MatN gv(q, q);
  for (int a = 0; a < q; a++)
    for (int b = 0; b < q; b++) {
      double s = 0.0;
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) s += bv(a, i) * gm(i, j) * bv(b, j);
      gv(a, b) = s;
    }
  if (metric_index(q, gv.a.data()) != q)
    throw ContractError("stretch spec: V not g-timelike at the point");
  if (!(eval_value(spec.f, x) > 0.0))
    throw ContractError("stretch spec: factor not positive at the point");
}

MatN switch_metric(const StretchSpec& spec, const VecN& x) {
  validate_stretch_spec(spec, x);
  const int n = spec.g.dim;
  const int q = spec.v.rank;
  // G - 2K flips the sign of g on V and keeps the g-orthogonal block.
  MatN gm = eval_value(spec.g, x);
  MatN bv = distribution_basis(spec.v, x);
  MatN amat(q, n);
  for (int a = 0; a < q; a++)
    for (int c = 0; c < n; c++) {
      double s = 0.0;
      for (int m = 0; m < n; m++) s += bv(a, m) * gm(m, c);
      amat(a, c) = s;
    }
  MatN gv(q, q);
  for (int a = 0; a < q; a++)
    for (int b = 0; b < q; b++) {
      double s = 0.0;
      for (int c = 0; c < n; c++) s += amat(a, c) * bv(b, c);
      gv(a, b) = s;
    }
  MatN xm = amat;
  solve_inplace(q, n, gv.a.data(), xm.a.data());
  MatN h(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      double k = 0.0;
      for (int r = 0; r < q; r++) k += amat(r, i) * xm(r, j);
      h(i, j) = gm(i, j) - 2.0 * k;
    }
  return h;
}

MetricField stretch(const StretchSpec& spec) {
  const int n = spec.g.dim;
  if (n < 1 || spec.v.n != n || spec.f.dim != n)
    throw ContractError("stretch: dimension mismatch");
  if (spec.v.rank != spec.g.index)
    throw ContractError("stretch: V rank must equal the metric index");
  const MetricField g = spec.g;
  const std::vector<VectorField> spans = spec.v.spans;
  const ScalarField f = spec.f;
  const int q = spec.v.rank;
  return MetricField::make(n, spec.g.index, [g, spans, f, n, q](const auto* y, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
    stretched_metric_eval<T>(g, spans, f, n, q, y, out);
  });
}

VecN bar_map(const StretchSpec& spec, const VecN& x, const VecN& u) {
  validate_stretch_spec(spec, x);
  const int n = spec.g.dim;
  if (u.n != n) throw ContractError("bar map: vector dimension mismatch");
  const int q = spec.v.rank;
  MatN gm = eval_value(spec.g, x);
  MatN bv = distribution_basis(spec.v, x);
  // c = Gv^{-1} (Bv G u), u_V = Bv^T c
  VecN gu(n);
  for (int i = 0; i < n; i++) {
    double s = 0.0;
    for (int j = 0; j < n; j++) s += gm(i, j) * u[j];
    gu[i] = s;
  }
  VecN c(q);
  MatN gv(q, q);
  for (int a = 0; a < q; a++) {
    double s = 0.0;
    for (int i = 0; i < n; i++) s += bv(a, i) * gu[i];
    c[a] = s;
    for (int b = 0; b < q; b++) {
      double t = 0.0;
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) t += bv(a, i) * gm(i, j) * bv(b, j);
      gv(a, b) = t;
    }
  }
  solve_inplace(q, 1, gv.a.data(), c.a.data());
  const double fv = eval_value(spec.f, x);
  VecN out = u;
  for (int a = 0; a < q; a++)
    for (int i = 0; i < n; i++) out[i] += (fv - 1.0) * c[a] * bv(a, i);
  return out;
}

// ---------------------------------------------------------------------------
// Frames.

Frame seeded_frame(const MetricField& g, const std::vector<VectorField>& seeds,
                   const VecN& anchor) {
  const int n = g.dim;
  if (anchor.n != n) throw ContractError("seeded frame: anchor dimension mismatch");
  for (const VectorField& s : seeds)
    if (s.dim != n) throw ContractError("seeded frame: seed dimension mismatch");
  Frame frame;
  frame.n = n;
  double rows[kMaxDim * kMaxDim];
  int signs[kMaxDim] = {};
  seeded_rows_at<double>(g, seeds, n, anchor.data(), rows, signs);
  for (int a = 0; a < n; a++) frame.eps[static_cast<size_t>(a)] = signs[a];
  for (int a = 0; a < n; a++) {
    frame.fields.push_back(VectorField::make(n, [g, seeds, n, a](const auto* y, auto* out) {
      using T = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
      T r[kMaxDim * kMaxDim];
      int sg[kMaxDim];
      seeded_rows_at<T>(g, seeds, n, y, r, sg);
      for (int j = 0; j < n; j++) out[j] = r[a * n + j];
    }));
  }
  return frame;
}

Frame barred_frame(const StretchSpec& spec, const Frame& adapted) {
  const int n = spec.g.dim;
  const int q = spec.v.rank;
  if (adapted.n != n || static_cast<int>(adapted.fields.size()) != n)
    throw ContractError("barred frame: frame dimension mismatch");
  if (q > n) throw ContractError("barred frame: V rank exceeds dimension");
  Frame out = adapted;
  for (int i = 0; i < q; i++)
    out.fields[static_cast<size_t>(i)] = scale(spec.f, adapted.fields[static_cast<size_t>(i)]);
  return out;
}

// ---------------------------------------------------------------------------
// Stretched Christoffel table: the eight index cases, V indices first.

ChristoffelTable stretched_christoffel_table(const ChristoffelTable& gamma, int q,
                                             double f_value, const VecN& df_in_frame,
                                             const int* eps) {
  const int n = gamma.n;
  if (n < 1) throw ContractError("stretched table: empty table");
  if (gamma.flavor != ChristoffelFlavor::orthonormal)
    throw ContractError("stretched table: input table must be orthonormal flavor");
  if (q < 1 || q > n) throw ContractError("stretched table: V/H partition out of range");
  if (df_in_frame.n != n) throw ContractError("stretched table: df vector length mismatch");
  if (eps == nullptr) throw ContractError("stretched table: missing frame signs");
  if (!(f_value > 0.0)) throw ContractError("stretched table: factor must be positive");
  const double f = f_value;
  const double inv_f = 1.0 / f;
  ChristoffelTable out;
  out.n = n;
  out.flavor = ChristoffelFlavor::orthonormal;
  for (int k = 0; k < n; k++) out.entries[static_cast<size_t>(k)] = MatN(n, n);
  for (int k = 0; k < n; k++)
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        const bool iv = i < q;
        const bool jv = j < q;
        const bool kv = k < q;
        double val = 0.0;
        if (!iv && !jv && !kv) {
          val = gamma.at(k, i, j);
        } else if (!iv && !jv && kv) {
          val = 0.5 * (inv_f * (gamma.at(k, i, j) - gamma.at(k, j, i)) +
                       f * (gamma.at(k, i, j) + gamma.at(k, j, i)));
        } else if (!iv && jv && !kv) {
          val = -0.5 * (inv_f * (gamma.at(j, i, k) - gamma.at(j, k, i)) +
                        f * (gamma.at(j, i, k) + gamma.at(j, k, i)));
        } else if (iv && !jv && !kv) {
          val = f * gamma.at(k, i, j) +
                0.5 * (inv_f - f) * (gamma.at(i, k, j) - gamma.at(i, j, k));
        } else if (!iv && jv && kv) {
          val = gamma.at(k, i, j) -
                0.5 * (1.0 - f * f) * (gamma.at(i, k, j) - gamma.at(i, j, k));
        } else if (iv && !jv && kv) {
          val = -0.5 * ((gamma.at(j, i, k) + gamma.at(j, k, i)) +
                        f * f * (gamma.at(j, i, k) - gamma.at(j, k, i)));
          if (i == k) val -= eps[k] * inv_f * df_in_frame[j];
        } else if (iv && jv && !kv) {
          val = 0.5 * ((gamma.at(k, i, j) + gamma.at(k, j, i)) +
                       f * f * (gamma.at(k, i, j) - gamma.at(k, j, i)));
          if (i == j) val += eps[j] * inv_f * df_in_frame[k];
        } else {
          val = f * gamma.at(k, i, j);
          if (i == k) val -= eps[i] * df_in_frame[j];
          if (i == j) val += eps[i] * df_in_frame[k];
        }
        out.at(k, i, j) = val;
      }
  return out;
}

// ---------------------------------------------------------------------------
// Skew normal form.

SkewNormalForm skew_normal_form(const MatN& a) {
  const int m = a.rows;
  if (m < 1 || a.cols != m) throw ContractError("skew normal form: matrix must be square");
  double amax = 0.0;
  double skew_dev = 0.0;
  for (int i = 0; i < m; i++)
    for (int j = 0; j < m; j++) {
      amax = std::max(amax, std::fabs(a(i, j)));
      skew_dev = std::max(skew_dev, std::fabs(a(i, j) + a(j, i)));
    }
  if (skew_dev >= kSkewTol * std::max(1.0, amax))
    throw ContractError("skew normal form: matrix is not skew-symmetric");
  const int r = m / 2;
  SkewNormalForm nf;
  nf.m = m;
  nf.r = r;
  nf.lambda = VecN(r);
  nf.basis = MatN(m, m);

  // S = A^T A = -A^2: eigenvalues are the squared spectrum entries, each
  // nonzero one with even multiplicity.
  double s[kMaxDim * kMaxDim];
  for (int i = 0; i < m; i++)
    for (int j = 0; j < m; j++) {
      double acc = 0.0;
      for (int k = 0; k < m; k++) acc += a(k, i) * a(k, j);
      s[i * m + j] = acc;
    }
  double vals[kMaxDim];
  double vecs[kMaxDim * kMaxDim];
  sym_eigen(m, s, vals, vecs);
  const double rank_tol = 1e-10 * std::max(1.0, vals[m - 1]);

  double accepted[kMaxDim * kMaxDim];  // u rows then w rows, interleaved by pair
  double us[kMaxDim * kMaxDim];
  double ws[kMaxDim * kMaxDim];
  int pairs = 0;
  int acc_count = 0;
  for (int e = m - 1; e >= 0 && pairs < r; e--) {
    if (!(vals[e] > rank_tol)) break;
    double cand[kMaxDim];
    for (int i = 0; i < m; i++) cand[i] = vecs[e * m + i];
    double nn = project_off(accepted, acc_count, m, cand);
    if (nn < 0.5) continue;  // this eigenvector is spanned by earlier pairs
    for (int i = 0; i < m; i++) cand[i] /= nn;
    const double lam = std::sqrt(vals[e]);
    double w[kMaxDim];
    for (int i = 0; i < m; i++) {
      double acc2 = 0.0;
      for (int j = 0; j < m; j++) acc2 += a(i, j) * cand[j];
      w[i] = -acc2 / lam;
    }
    for (int i = 0; i < m; i++) accepted[acc_count * m + i] = cand[i];
    acc_count++;
    double wn = project_off(accepted, acc_count, m, w);
    if (wn < 0.5) throw Error("skew normal form: pairing degenerated");
    for (int i = 0; i < m; i++) w[i] /= wn;
    for (int i = 0; i < m; i++) accepted[acc_count * m + i] = w[i];
    acc_count++;
    for (int i = 0; i < m; i++) {
      us[pairs * m + i] = cand[i];
      ws[pairs * m + i] = w[i];
    }
    nf.lambda[pairs] = lam;
    pairs++;
  }

  // Kernel completion: greedy best coordinate axis each round.
  double ker[kMaxDim * kMaxDim];
  const int need = m - 2 * pairs;
  for (int slot = 0; slot < need; slot++) {
    int best_axis = -1;
    double best_norm = 0.0;
    double best_row[kMaxDim];
    for (int ax = 0; ax < m; ax++) {
      double cand[kMaxDim];
      for (int i = 0; i < m; i++) cand[i] = (i == ax) ? 1.0 : 0.0;
      double nn = project_off(accepted, acc_count, m, cand);
      if (nn > best_norm) {
        best_norm = nn;
        best_axis = ax;
        for (int i = 0; i < m; i++) best_row[i] = cand[i];
      }
    }
    if (best_axis < 0 || best_norm < 1e-6)
      throw Error("skew normal form: kernel completion failed");
    for (int i = 0; i < m; i++) {
      best_row[i] /= best_norm;
      ker[slot * m + i] = best_row[i];
      accepted[acc_count * m + i] = best_row[i];
    }
    acc_count++;
  }

  // Assemble rows [u_1..u_r, w_1..w_r, odd leftover], kernel rows filling the
  // zero-padded slots.
  int kidx = 0;
  for (int i = 0; i < r; i++) {
    const double* src = (i < pairs) ? us + i * m : ker + (kidx++) * m;
    for (int c = 0; c < m; c++) nf.basis(i, c) = src[c];
  }
  for (int i = 0; i < r; i++) {
    const double* src = (i < pairs) ? ws + i * m : ker + (kidx++) * m;
    for (int c = 0; c < m; c++) nf.basis(r + i, c) = src[c];
  }
  if (2 * r < m)
    for (int c = 0; c < m; c++) nf.basis(m - 1, c) = ker[(kidx)*m + c];

  // Reconstruction self-check: P A P^T must be the block form.
  const double tol = kReconTol * std::max(1.0, amax);
  for (int i = 0; i < m; i++)
    for (int j = 0; j < m; j++) {
      double acc2 = 0.0;
      for (int k = 0; k < m; k++)
        for (int l = 0; l < m; l++) acc2 += nf.basis(i, k) * a(k, l) * nf.basis(j, l);
      double want = 0.0;
      if (j == i + r && i < r) want = nf.lambda[i];
      if (i == j + r && j < r) want = -nf.lambda[j];
      if (std::fabs(acc2 - want) > tol)
        throw Error("skew normal form: reconstruction check failed");
    }
  return nf;
}

// ---------------------------------------------------------------------------
// b / beta.

BBeta b_beta(const MetricField& g, const Distribution& h, const VecN& x) {
  const int n = g.dim;
  if (g.index != 1)
    throw UnsupportedIndexError("b/beta supports Lorentzian metrics (index 1) only");
  if (h.n != n || x.n != n) throw ContractError("b/beta: dimension mismatch");
  if (h.rank != n - 1) throw ContractError("b/beta: distribution must have corank one");
  MatN gm = eval_value(g, x);
  MatN hb = distribution_basis(h, x);
  // Restricted positive definiteness (spacelike).
  MatN gh(n - 1, n - 1);
  double gh_max = 0.0;
  for (int a = 0; a < n - 1; a++)
    for (int b = 0; b < n - 1; b++) {
      gh(a, b) = pair_rows(gm, hb.a.data() + a * n, hb.a.data() + b * n, n);
      gh_max = std::max(gh_max, std::fabs(gh(a, b)));
    }
  double vals[kMaxDim];
  double vecs[kMaxDim * kMaxDim];
  sym_eigen(n - 1, gh.a.data(), vals, vecs);
  if (!(vals[0] > kEigenBand * std::max(1.0, gh_max)))
    throw ContractError("b/beta: distribution not spacelike at the point");

  BBeta out;
  out.n = n;
  out.x = x;
  out.frame_rows = MatN(n, n);
  out.eps[0] = -1;
  for (int a = 1; a < n; a++) out.eps[static_cast<size_t>(a)] = 1;

  // Unit timelike normal.
  MatN comp = orthogonal_complement(g, h, x);
  double e0[kMaxDim];
  for (int i = 0; i < n; i++) e0[i] = comp(0, i);
  const double s0 = pair_rows(gm, e0, e0, n);
  if (!(s0 < 0.0)) throw ContractError("b/beta: normal direction not timelike");
  const double inv0 = 1.0 / std::sqrt(-s0);
  for (int i = 0; i < n; i++) out.frame_rows(0, i) = e0[i] * inv0;

  // g-orthonormalize the H rows below the normal.
  for (int a = 0; a < n - 1; a++) {
    double v[kMaxDim];
    for (int i = 0; i < n; i++) v[i] = hb(a, i);
    for (int b = 0; b <= a; b++) {
      double qrow[kMaxDim];
      for (int i = 0; i < n; i++) qrow[i] = out.frame_rows(b, i);
      double c = pair_rows(gm, v, qrow, n);
      const double sign = (b == 0) ? -1.0 : 1.0;
      for (int i = 0; i < n; i++) v[i] -= sign * c * qrow[i];
    }
    const double sv = pair_rows(gm, v, v, n);
    if (!(sv > kNullPivotTol)) throw DegeneracyError("b/beta: frame pivot degenerated");
    const double inv = 1.0 / std::sqrt(sv);
    for (int i = 0; i < n; i++) out.frame_rows(1 + a, i) = v[i] * inv;
  }

  // Twist matrix over the H frame rows against the unit normal.
  out.twist = MatN(n - 1, n - 1);
  {
    VecN w(n);
    for (int i = 0; i < n; i++) w[i] = out.frame_rows(0, i);
    for (int i = 0; i < n - 1; i++)
      for (int j = i + 1; j < n - 1; j++) {
        VecN u(n);
        VecN v(n);
        for (int c = 0; c < n; c++) {
          u[c] = out.frame_rows(1 + i, c);
          v[c] = out.frame_rows(1 + j, c);
        }
        double tw = 0.0;
        double sw = 0.0;
        tw_sw_metric(g, h, x, u, v, w, &tw, &sw);
        out.twist(i, j) = tw;
        out.twist(j, i) = -tw;
      }
  }

  // b: double H-trace on the normal block, -2 mixed trace on the H block
  // (signature sign folded in), zero on mixed pairs.
  out.b = MatN(n, n);
  double b00 = 0.0;
  for (int k = 0; k < n - 1; k++)
    for (int l = 0; l < n - 1; l++) b00 += out.twist(k, l) * out.twist(k, l);
  out.b(0, 0) = b00;
  for (int i = 0; i < n - 1; i++)
    for (int j = 0; j < n - 1; j++) {
      double acc = 0.0;
      for (int k = 0; k < n - 1; k++) acc += out.twist(i, k) * out.twist(j, k);
      out.b(1 + i, 1 + j) = 2.0 * acc;
    }
  double tr = -out.b(0, 0);
  for (int a = 1; a < n; a++) tr += out.b(a, a);
  out.beta = out.b;
  for (int a = 0; a < n; a++)
    out.beta(a, a) -= 0.5 * tr * static_cast<double>(out.eps[static_cast<size_t>(a)]);

  out.lambda = skew_normal_form(out.twist).lambda;

  // Ambient coordinate forms through the dual coframe theta^a = eps_a g(e_a, .).
  double theta[kMaxDim][kMaxDim];
  for (int a = 0; a < n; a++)
    for (int i = 0; i < n; i++) {
      double acc = 0.0;
      for (int j = 0; j < n; j++) acc += gm(i, j) * out.frame_rows(a, j);
      theta[a][i] = static_cast<double>(out.eps[static_cast<size_t>(a)]) * acc;
    }
  out.b_coord = MatN(n, n);
  out.beta_coord = MatN(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      double accb = 0.0;
      double acct = 0.0;
      for (int a = 0; a < n; a++)
        for (int b = 0; b < n; b++) {
          accb += out.b(a, b) * theta[a][i] * theta[b][j];
          acct += out.beta(a, b) * theta[a][i] * theta[b][j];
        }
      out.b_coord(i, j) = accb;
      out.beta_coord(i, j) = acct;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Niceness certificate.

NicenessCertificate niceness_certificate(const MetricField& g, const Distribution& h,
                                         const std::vector<VecN>& points, int trials) {
  if (points.empty()) throw ContractError("niceness certificate: empty sample set");
  if (trials < 2) throw ContractError("niceness certificate: need at least two trials");
  NicenessCertificate cert;
  cert.samples.resize(points.size());
  const double inf = std::numeric_limits<double>::infinity();
  parallel_for(0, static_cast<int>(points.size()), [&](int pi) {
    const VecN& x = points[static_cast<size_t>(pi)];
    BBeta bb = b_beta(g, h, x);
    const int n = bb.n;
    const int d = n - 1;
    double lamsq = 0.0;
    for (int k = 0; k < bb.lambda.n; k++) lamsq += bb.lambda[k] * bb.lambda[k];
    NicenessSample smp;
    smp.x = x;
    smp.lambda = bb.lambda;
    smp.b = bb.b;
    smp.beta = bb.beta;
    smp.min_b = inf;
    smp.min_beta = inf;
    smp.min_momentum = inf;
    smp.slack_b_bound = inf;
    smp.slack_beta_bound = inf;
    smp.slack_momentum_bound = inf;
    const int interior = trials / 2;
    for (int t = 0; t < trials; t++) {
      // Causal slice v = e_0 + u, |u| <= 1 in the frame, rescaled to unit
      // switch norm: cone interior first, then the boundary sphere.
      VecN u = (t < interior) ? sampling::ball_point(d, t)
                              : sampling::sphere_point(d, t - interior + 1);
      double usq = 0.0;
      for (int i = 0; i < d; i++) usq += u[i] * u[i];
      const double inv = 1.0 / std::sqrt(1.0 + usq);
      double v[kMaxDim];
      v[0] = inv;
      for (int i = 0; i < d; i++) v[1 + i] = u[i] * inv;
      const double bvv = quad_form(bb.b, v, n);
      const double tvv = quad_form(bb.beta, v, n);
      double mom = 0.0;
      for (int i = 0; i < n; i++) {
        double bi = 0.0;
        for (int j = 0; j < n; j++) bi += v[j] * bb.beta(j, i);
        mom -= static_cast<double>(bb.eps[static_cast<size_t>(i)]) * bi * bi;
      }
      smp.min_b = std::min(smp.min_b, bvv);
      smp.min_beta = std::min(smp.min_beta, tvv);
      smp.min_momentum = std::min(smp.min_momentum, mom);
      smp.slack_b_bound = std::min(smp.slack_b_bound, bvv - lamsq);
      smp.slack_beta_bound = std::min(smp.slack_beta_bound, tvv - bvv);
      smp.slack_momentum_bound =
          std::min(smp.slack_momentum_bound, mom - 8.0 * lamsq * lamsq * v[0] * v[0]);
    }
    cert.samples[static_cast<size_t>(pi)] = smp;
  });
  double mb = inf;
  double mbeta = inf;
  double mmom = inf;
  for (const NicenessSample& smp : cert.samples) {
    mb = std::min(mb, smp.min_b);
    mbeta = std::min(mbeta, smp.min_beta);
    mmom = std::min(mmom, smp.min_momentum);
  }
  cert.weak_nice = mb > 0.0;
  cert.semidom_nice = mbeta > 0.0;
  cert.causal_nice = mmom > 0.0;
  cert.dominant_nice = cert.semidom_nice && cert.causal_nice;
  cert.c_weak = cert.weak_nice ? mb : -inf;
  cert.c_semidom = cert.semidom_nice ? mbeta : -inf;
  cert.c_causal = cert.causal_nice ? mmom : -inf;
  return cert;
}

// ---------------------------------------------------------------------------
// Ricci asymptotics in the stretch factor.

StretchAsymptotics ricci_asymptotics(const MetricField& g, const Distribution& h,
                                     const Distribution& v, const VecN& x,
                                     const std::vector<double>& eps_list) {
  const int n = g.dim;
  if (h.n != n || v.n != n || x.n != n)
    throw ContractError("ricci asymptotics: dimension mismatch");
  if (eps_list.empty()) throw ContractError("ricci asymptotics: empty factor list");
  for (size_t i = 0; i < eps_list.size(); i++) {
    if (!(eps_list[i] > 0.0))
      throw ContractError("ricci asymptotics: factors must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw ContractError("ricci asymptotics: factors must be strictly descending");
  }
  const int q = v.rank;
  Frame base = seeded_frame(g, v.spans, x);
  MatN rows(n, n);
  for (int a = 0; a < n; a++) {
    VecN val = eval_value(base.fields[static_cast<size_t>(a)], x);
    for (int i = 0; i < n; i++) rows(a, i) = val[i];
  }
  BBeta bb = b_beta(g, h, x);
  StretchAsymptotics out;
  out.x = x;
  out.b = MatN(n, n);
  out.beta = MatN(n, n);
  for (int a = 0; a < n; a++)
    for (int b = 0; b < n; b++) {
      double accb = 0.0;
      double acct = 0.0;
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
          accb += rows(a, i) * bb.b_coord(i, j) * rows(b, j);
          acct += rows(a, i) * bb.beta_coord(i, j) * rows(b, j);
        }
      out.b(a, b) = accb;
      out.beta(a, b) = acct;
    }
  out.rows.resize(eps_list.size());
  parallel_for(0, static_cast<int>(eps_list.size()), [&](int ei) {
    const double e = eps_list[static_cast<size_t>(ei)];
    StretchSpec spec{g, v, constant_scalar(n, e)};
    MetricField gbar = stretch(spec);
    Frame barred = barred_frame(spec, base);
    CurvatureReport rep = curvature_report(gbar, x, &barred, false);
    StretchAsymptoticsRow row;
    row.eps = e;
    row.ric_frame = rep.frame_ricci;
    const double fac = 1.0 / (4.0 * e * e);
    for (int a = 0; a < n; a++)
      for (int b = 0; b < n; b++) {
        const double ric = rep.frame_ricci(a, b);
        if (a >= q && b >= q)
          row.r_hh = std::max(row.r_hh, std::fabs(ric - fac * out.b(a, b)));
        else if (a < q && b < q)
          row.r_vv = std::max(row.r_vv, std::fabs(ric - fac * out.b(a, b)));
        else
          row.r_mix = std::max(row.r_mix, std::fabs(ric));
      }
    out.rows[static_cast<size_t>(ei)] = row;
  });
  std::vector<double> hh;
  std::vector<double> vv;
  std::vector<double> mix;
  for (const StretchAsymptoticsRow& row : out.rows) {
    hh.push_back(row.r_hh);
    vv.push_back(row.r_vv);
    mix.push_back(row.eps * row.r_mix);
  }
  out.hh_bounded = bounded_trend(hh);
  out.vv_bounded = bounded_trend(vv);
  out.mix_bounded = bounded_trend(mix);
  return out;
}

// ---------------------------------------------------------------------------
// Graph-slope bound for nontimelike hyperplanes.

KeyLemmaResult key_lemma_bound(const MetricField& g, const Distribution& v,
                               const Distribution& h, double f_value,
                               const Distribution& p, const VecN& x) {
  const int n = g.dim;
  if (v.n != n || h.n != n || p.n != n || x.n != n)
    throw ContractError("key lemma: dimension mismatch");
  if (!(f_value > 0.0)) throw ContractError("key lemma: stretch factor must be positive");
  if (p.rank != n - v.rank)
    throw ContractError("key lemma: P must have complementary rank to V");
  StretchSpec spec{g, v, constant_scalar(n, f_value)};
  validate_stretch_spec(spec, x);

  // Graph map first so transversality failures surface as such.
  GraphMap gmp = graph_map(p, h, v, x);

  MatN gm = eval_value(g, x);
  MatN bv = distribution_basis(v, x);
  MatN bh = distribution_basis(h, x);
  const int qv = v.rank;
  const int mh = h.rank;

  // Restricted stretched metric on P: any negative direction is a timelike
  // witness.
  MatN gbar = eval_value(stretch(spec), x);
  MatN pb = distribution_basis(p, x);
  MatN mp(p.rank, p.rank);
  double mp_max = 0.0;
  for (int a = 0; a < p.rank; a++)
    for (int b = 0; b < p.rank; b++) {
      mp(a, b) = pair_rows(gbar, pb.a.data() + a * n, pb.a.data() + b * n, n);
      mp_max = std::max(mp_max, std::fabs(mp(a, b)));
    }
  double pvals[kMaxDim];
  double pvecs[kMaxDim * kMaxDim];
  sym_eigen(p.rank, mp.a.data(), pvals, pvecs);

  KeyLemmaResult res;
  if (pvals[0] < -kEigenBand * std::max(1.0, mp_max)) {
    res.contains_timelike = true;
    res.witness = VecN(n);
    for (int c = 0; c < p.rank; c++)
      for (int i = 0; i < n; i++) res.witness[i] += pvecs[c] * pb(c, i);
    const double wn = norm2(res.witness);
    if (wn > 0.0)
      for (int i = 0; i < n; i++) res.witness[i] /= wn;
  }

  // |lambda[P](w)|_{g_V}^2 = c^T M^T (-G_V) M c over |w|_{g_H}^2 = c^T G_H c.
  MatN gvneg(qv, qv);
  for (int a = 0; a < qv; a++)
    for (int b = 0; b < qv; b++)
      gvneg(a, b) = -pair_rows(gm, bv.a.data() + a * n, bv.a.data() + b * n, n);
  MatN ghm(mh, mh);
  double gh_max = 0.0;
  for (int a = 0; a < mh; a++)
    for (int b = 0; b < mh; b++) {
      ghm(a, b) = pair_rows(gm, bh.a.data() + a * n, bh.a.data() + b * n, n);
      gh_max = std::max(gh_max, std::fabs(ghm(a, b)));
    }
  double hvals[kMaxDim];
  double hvecs[kMaxDim * kMaxDim];
  sym_eigen(mh, ghm.a.data(), hvals, hvecs);
  if (!(hvals[0] > kEigenBand * std::max(1.0, gh_max)))
    throw ContractError("key lemma: H not spacelike at the point");
  // Q = M^T gvneg M (mh x mh)
  MatN qm(mh, mh);
  for (int i = 0; i < mh; i++)
    for (int j = 0; j < mh; j++) {
      double acc = 0.0;
      for (int a = 0; a < qv; a++)
        for (int b = 0; b < qv; b++) acc += gmp.matrix(a, i) * gvneg(a, b) * gmp.matrix(b, j);
      qm(i, j) = acc;
    }
  // Whiten G_H: c = E^T D^{-1/2} z turns the denominator into |z|^2.
  MatN sm(mh, mh);
  for (int i = 0; i < mh; i++)
    for (int j = 0; j < mh; j++) {
      double acc = 0.0;
      for (int a = 0; a < mh; a++)
        for (int b = 0; b < mh; b++)
          acc += hvecs[i * mh + a] * qm(a, b) * hvecs[j * mh + b] /
                 std::sqrt(hvals[i] * hvals[j]);
      sm(i, j) = acc;
    }
  double svals[kMaxDim];
  double svecs[kMaxDim * kMaxDim];
  sym_eigen(mh, sm.a.data(), svals, svecs);
  res.operator_norm = std::sqrt(std::max(0.0, svals[mh - 1]));
  res.slack = f_value - res.operator_norm;
  res.bound_holds = !res.contains_timelike && res.slack >= -kSlackBand;
  return res;
}

}  // namespace lorentz
