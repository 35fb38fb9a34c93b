// lorentzlab - field evaluation: jets, finite differences, Lie brackets

#include "lorentz/fields.hpp"

#include <cmath>
#include <string>
#include <type_traits>

namespace lorentz {

namespace {

void require_dim(int field_dim, int point_dim, const char* what) {
  if (field_dim != point_dim)
    throw ContractError(std::string(what) + ": dimension mismatch (field dim " +
                        std::to_string(field_dim) + ", point dim " +
                        std::to_string(point_dim) + ")");
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw EvalDomainError(std::string(what) + ": non-finite evaluation");
}

void seed_jet1(const VecN& x, Jet1* out) {
  for (int i = 0; i < x.n; i++) out[i] = Jet1::seed(x.n, i, x[i]);
}

void seed_jet2(const VecN& x, Jet2* out) {
  for (int i = 0; i < x.n; i++) out[i] = Jet2::seed(x.n, i, x[i]);
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalar fields.

double eval_value(const ScalarField& f, const VecN& x) {
  require_dim(f.dim, x.n, "scalar field");
  double v = f.f0(x.data());
  require_finite(v, "scalar field");
  return v;
}

ScalarJet evaluate_jet(const ScalarField& f, const VecN& x, int order, DerivMode mode,
                       double fd_step) {
  require_dim(f.dim, x.n, "scalar field");
  const int n = x.n;
  ScalarJet out;
  out.n = n;
  out.order = order;
  out.grad = VecN(n);
  out.hess = MatN(n, n);
  if (order == 0) {
    out.value = f.f0(x.data());
  } else if (mode == DerivMode::dual) {
    if (order == 1) {
      Jet1 xs[kMaxDim];
      seed_jet1(x, xs);
      Jet1 r = f.f1(xs);
      out.value = r.v;
      for (int i = 0; i < n; i++) out.grad[i] = r.d[i];
    } else {
      Jet2 xs[kMaxDim];
      seed_jet2(x, xs);
      Jet2 r = f.f2(xs);
      out.value = r.v;
      for (int i = 0; i < n; i++) out.grad[i] = r.d[i];
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) out.hess(i, j) = r.hess(i, j);
    }
  } else {
    const double h = fd_step;
    out.value = f.f0(x.data());
    VecN xp = x, xm = x;
    for (int i = 0; i < n; i++) {
      xp[i] = x[i] + h;
      xm[i] = x[i] - h;
      out.grad[i] = (f.f0(xp.data()) - f.f0(xm.data())) / (2.0 * h);
      xp[i] = x[i];
      xm[i] = x[i];
    }
    if (order >= 2) {
      for (int i = 0; i < n; i++) {
        VecN y = x;
        y[i] = x[i] + h;
        double fp = f.f0(y.data());
        y[i] = x[i] - h;
        double fm = f.f0(y.data());
        out.hess(i, i) = (fp - 2.0 * out.value + fm) / (h * h);
        for (int j = i + 1; j < n; j++) {
          VecN z = x;
          z[i] = x[i] + h;
          z[j] = x[j] + h;
          double fpp = f.f0(z.data());
          z[j] = x[j] - h;
          double fpm = f.f0(z.data());
          z[i] = x[i] - h;
          double fmm = f.f0(z.data());
          z[j] = x[j] + h;
          double fmp = f.f0(z.data());
          double v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
          out.hess(i, j) = v;
          out.hess(j, i) = v;
        }
      }
    }
  }
  require_finite(out.value, "scalar field");
  if (order >= 1)
    for (int i = 0; i < n; i++) require_finite(out.grad[i], "scalar field gradient");
  if (order >= 2)
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) require_finite(out.hess(i, j), "scalar field hessian");
  return out;
}

// ---------------------------------------------------------------------------
// Vector fields.

VecN eval_value(const VectorField& v, const VecN& x) {
  require_dim(v.dim, x.n, "vector field");
  VecN out(x.n);
  v.f0(x.data(), out.data());
  for (int i = 0; i < x.n; i++) require_finite(out[i], "vector field");
  return out;
}

VectorJet evaluate_jet(const VectorField& v, const VecN& x, int order, DerivMode mode,
                       double fd_step) {
  require_dim(v.dim, x.n, "vector field");
  const int n = x.n;
  VectorJet out;
  out.n = n;
  out.order = order;
  out.value = VecN(n);
  out.jac = MatN(n, n);
  for (int i = 0; i < n; i++) out.hess[static_cast<size_t>(i)] = MatN(n, n);
  if (order == 0) {
    v.f0(x.data(), out.value.data());
  } else if (mode == DerivMode::dual) {
    if (order == 1) {
      Jet1 xs[kMaxDim], ys[kMaxDim];
      seed_jet1(x, xs);
      v.f1(xs, ys);
      for (int i = 0; i < n; i++) {
        out.value[i] = ys[i].v;
        for (int j = 0; j < n; j++) out.jac(i, j) = ys[i].d[j];
      }
    } else {
      Jet2 xs[kMaxDim], ys[kMaxDim];
      seed_jet2(x, xs);
      v.f2(xs, ys);
      for (int i = 0; i < n; i++) {
        out.value[i] = ys[i].v;
        for (int j = 0; j < n; j++) out.jac(i, j) = ys[i].d[j];
        for (int j = 0; j < n; j++)
          for (int k = 0; k < n; k++) out.hess[static_cast<size_t>(i)](j, k) = ys[i].hess(j, k);
      }
    }
  } else {
    const double h = fd_step;
    v.f0(x.data(), out.value.data());
    double fp[kMaxDim], fm[kMaxDim];
    for (int j = 0; j < n; j++) {
      VecN y = x;
      y[j] = x[j] + h;
      v.f0(y.data(), fp);
      y[j] = x[j] - h;
      v.f0(y.data(), fm);
      for (int i = 0; i < n; i++) out.jac(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    }
    if (order >= 2) {
      double fpp[kMaxDim], fpm[kMaxDim], fmp[kMaxDim], fmm[kMaxDim];
      for (int j = 0; j < n; j++) {
        VecN y = x;
        y[j] = x[j] + h;
        v.f0(y.data(), fp);
        y[j] = x[j] - h;
        v.f0(y.data(), fm);
        for (int i = 0; i < n; i++)
          out.hess[static_cast<size_t>(i)](j, j) = (fp[i] - 2.0 * out.value[i] + fm[i]) / (h * h);
        for (int k = j + 1; k < n; k++) {
          VecN z = x;
          z[j] = x[j] + h;
          z[k] = x[k] + h;
          v.f0(z.data(), fpp);
          z[k] = x[k] - h;
          v.f0(z.data(), fpm);
          z[j] = x[j] - h;
          v.f0(z.data(), fmm);
          z[k] = x[k] + h;
          v.f0(z.data(), fmp);
          for (int i = 0; i < n; i++) {
            double val = (fpp[i] - fpm[i] - fmp[i] + fmm[i]) / (4.0 * h * h);
            out.hess[static_cast<size_t>(i)](j, k) = val;
            out.hess[static_cast<size_t>(i)](k, j) = val;
          }
        }
      }
    }
  }
  for (int i = 0; i < n; i++) require_finite(out.value[i], "vector field");
  if (order >= 1)
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) require_finite(out.jac(i, j), "vector field jacobian");
  return out;
}

// ---------------------------------------------------------------------------
// Metric fields.

MatN eval_value(const MetricField& g, const VecN& x) {
  require_dim(g.dim, x.n, "metric field");
  const int n = x.n;
  double buf[kMaxDim * kMaxDim];
  g.f0(x.data(), buf);
  MatN out(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      require_finite(buf[i * n + j], "metric field");
      out(i, j) = buf[i * n + j];
    }
  return out;
}

MetricJet evaluate_jet(const MetricField& g, const VecN& x, int order, DerivMode mode,
                       double fd_step) {
  require_dim(g.dim, x.n, "metric field");
  const int n = x.n;
  MetricJet out;
  out.n = n;
  out.order = order;
  out.value = MatN(n, n);
  for (int k = 0; k < n; k++) out.d1[static_cast<size_t>(k)] = MatN(n, n);
  if (order >= 2)
    for (int k = 0; k < n; k++)
      for (int l = 0; l < n; l++) out.d2[static_cast<size_t>(k * kMaxDim + l)] = MatN(n, n);

  if (order == 0) {
    double buf[kMaxDim * kMaxDim];
    g.f0(x.data(), buf);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) out.value(i, j) = buf[i * n + j];
  } else if (mode == DerivMode::dual) {
    if (order == 1) {
      Jet1 xs[kMaxDim], buf[kMaxDim * kMaxDim];
      seed_jet1(x, xs);
      g.f1(xs, buf);
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
          const Jet1& e = buf[i * n + j];
          out.value(i, j) = e.v;
          for (int k = 0; k < n; k++) out.d1[static_cast<size_t>(k)](i, j) = e.d[k];
        }
    } else {
      Jet2 xs[kMaxDim];
      Jet2 buf[kMaxDim * kMaxDim];  // ~37KB; evaluators may nest, so no shared statics
      seed_jet2(x, xs);
      g.f2(xs, buf);
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
          const Jet2& e = buf[static_cast<size_t>(i * n + j)];
          out.value(i, j) = e.v;
          for (int k = 0; k < n; k++) out.d1[static_cast<size_t>(k)](i, j) = e.d[k];
          for (int k = 0; k < n; k++)
            for (int l = 0; l < n; l++)
              out.d2[static_cast<size_t>(k * kMaxDim + l)](i, j) = e.hess(k, l);
        }
    }
  } else {
    const double h = fd_step;
    double c0[kMaxDim * kMaxDim], cp[kMaxDim * kMaxDim], cm[kMaxDim * kMaxDim];
    g.f0(x.data(), c0);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) out.value(i, j) = c0[i * n + j];
    for (int k = 0; k < n; k++) {
      VecN y = x;
      y[k] = x[k] + h;
      g.f0(y.data(), cp);
      y[k] = x[k] - h;
      g.f0(y.data(), cm);
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
          out.d1[static_cast<size_t>(k)](i, j) = (cp[i * n + j] - cm[i * n + j]) / (2.0 * h);
      if (order >= 2) {
        for (int i = 0; i < n; i++)
          for (int j = 0; j < n; j++)
            out.d2[static_cast<size_t>(k * kMaxDim + k)](i, j) =
                (cp[i * n + j] - 2.0 * c0[i * n + j] + cm[i * n + j]) / (h * h);
      }
    }
    if (order >= 2) {
      double fpp[kMaxDim * kMaxDim], fpm[kMaxDim * kMaxDim];
      double fmp[kMaxDim * kMaxDim], fmm[kMaxDim * kMaxDim];
      for (int k = 0; k < n; k++)
        for (int l = k + 1; l < n; l++) {
          VecN z = x;
          z[k] = x[k] + h;
          z[l] = x[l] + h;
          g.f0(z.data(), fpp);
          z[l] = x[l] - h;
          g.f0(z.data(), fpm);
          z[k] = x[k] - h;
          g.f0(z.data(), fmm);
          z[l] = x[l] + h;
          g.f0(z.data(), fmp);
          for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
              double val = (fpp[i * n + j] - fpm[i * n + j] - fmp[i * n + j] + fmm[i * n + j]) /
                           (4.0 * h * h);
              out.d2[static_cast<size_t>(k * kMaxDim + l)](i, j) = val;
              out.d2[static_cast<size_t>(l * kMaxDim + k)](i, j) = val;
            }
        }
    }
  }

  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) require_finite(out.value(i, j), "metric field");
  return out;
}

// ---------------------------------------------------------------------------
// Lie brackets.

VecN lie_bracket(const VectorField& x_field, const VectorField& y_field, const VecN& x) {
  if (x_field.dim != y_field.dim)
    throw ContractError("lie_bracket: vector fields of different dimension");
  require_dim(x_field.dim, x.n, "lie_bracket");
  VectorJet jx = evaluate_jet(x_field, x, 1);
  VectorJet jy = evaluate_jet(y_field, x, 1);
  const int n = x.n;
  VecN out(n);
  for (int i = 0; i < n; i++) {
    double s = 0.0;
    for (int j = 0; j < n; j++) s += jx.value[j] * jy.jac(i, j) - jy.value[j] * jx.jac(i, j);
    out[i] = s;
  }
  return out;
}

VectorField lie_bracket_field(const VectorField& x_field, const VectorField& y_field) {
  if (x_field.dim != y_field.dim)
    throw ContractError("lie_bracket_field: vector fields of different dimension");
  const int n = x_field.dim;
  VectorField out;
  out.dim = n;
  out.f0 = [x_field, y_field, n](const double* p, double* res) {
    Jet1 xs[kMaxDim], xv[kMaxDim], yv[kMaxDim];
    for (int i = 0; i < n; i++) xs[i] = Jet1::seed(n, i, p[i]);
    x_field.f1(xs, xv);
    y_field.f1(xs, yv);
    for (int i = 0; i < n; i++) {
      double s = 0.0;
      for (int j = 0; j < n; j++) s += xv[j].v * yv[i].d[j] - yv[j].v * xv[i].d[j];
      res[i] = s;
    }
  };
  // Jet1 evaluation: bracket value and gradient at the base point need second
  // derivatives of the operands; the input jets then enter via the chain rule.
  out.f1 = [x_field, y_field, n](const Jet1* p, Jet1* res) {
    Jet2 xs[kMaxDim], xv[kMaxDim], yv[kMaxDim];
    for (int i = 0; i < n; i++) xs[i] = Jet2::seed(n, i, p[i].v);
    x_field.f2(xs, xv);
    y_field.f2(xs, yv);
    int m = 0;
    for (int i = 0; i < n; i++) m = m > p[i].n ? m : p[i].n;
    for (int i = 0; i < n; i++) {
      double val = 0.0;
      double grad[kMaxDim] = {0.0};
      for (int j = 0; j < n; j++) {
        val += xv[j].v * yv[i].d[j] - yv[j].v * xv[i].d[j];
        for (int k = 0; k < n; k++)
          grad[k] += xv[j].d[k] * yv[i].d[j] + xv[j].v * yv[i].hess(j, k) -
                     yv[j].d[k] * xv[i].d[j] - yv[j].v * xv[i].hess(j, k);
      }
      Jet1 r(m, val);
      for (int s = 0; s < m; s++) {
        double acc = 0.0;
        for (int k = 0; k < n; k++) acc += grad[k] * p[k].d[s];
        r.d[s] = acc;
      }
      res[i] = r;
    }
  };
  out.f2 = [](const Jet2*, Jet2*) -> void {
    throw EvalDomainError(
        "lie_bracket_field: second-order jets would need third derivatives of the operands");
  };
  return out;
}

// ---------------------------------------------------------------------------
// Combinators.

ScalarField constant_scalar(int dim, double val) {
  return ScalarField::make(dim, [val](const auto* x) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
    (void)x;
    return T(val);
  });
}

VectorField coordinate_field(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw ContractError("coordinate_field: axis out of range");
  return VectorField::make(dim, [dim, axis](const auto* x, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
    (void)x;
    for (int i = 0; i < dim; i++) out[i] = T(i == axis ? 1.0 : 0.0);
  });
}

VectorField constant_vector(int dim, const VecN& comps) {
  if (comps.n != dim) throw ContractError("constant_vector: dimension mismatch");
  return VectorField::make(dim, [dim, comps](const auto* x, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
    (void)x;
    for (int i = 0; i < dim; i++) out[i] = T(comps[i]);
  });
}

VectorField add(const VectorField& a, const VectorField& b) {
  if (a.dim != b.dim) throw ContractError("add: dimension mismatch");
  const int n = a.dim;
  return VectorField{
      n,
      [a, b, n](const double* x, double* out) {
        double ta[kMaxDim], tb[kMaxDim];
        a.f0(x, ta);
        b.f0(x, tb);
        for (int i = 0; i < n; i++) out[i] = ta[i] + tb[i];
      },
      [a, b, n](const Jet1* x, Jet1* out) {
        Jet1 ta[kMaxDim], tb[kMaxDim];
        a.f1(x, ta);
        b.f1(x, tb);
        for (int i = 0; i < n; i++) out[i] = ta[i] + tb[i];
      },
      [a, b, n](const Jet2* x, Jet2* out) {
        Jet2 ta[kMaxDim], tb[kMaxDim];
        a.f2(x, ta);
        b.f2(x, tb);
        for (int i = 0; i < n; i++) out[i] = ta[i] + tb[i];
      }};
}

VectorField sub(const VectorField& a, const VectorField& b) {
  if (a.dim != b.dim) throw ContractError("sub: dimension mismatch");
  const int n = a.dim;
  return VectorField{
      n,
      [a, b, n](const double* x, double* out) {
        double ta[kMaxDim], tb[kMaxDim];
        a.f0(x, ta);
        b.f0(x, tb);
        for (int i = 0; i < n; i++) out[i] = ta[i] - tb[i];
      },
      [a, b, n](const Jet1* x, Jet1* out) {
        Jet1 ta[kMaxDim], tb[kMaxDim];
        a.f1(x, ta);
        b.f1(x, tb);
        for (int i = 0; i < n; i++) out[i] = ta[i] - tb[i];
      },
      [a, b, n](const Jet2* x, Jet2* out) {
        Jet2 ta[kMaxDim], tb[kMaxDim];
        a.f2(x, ta);
        b.f2(x, tb);
        for (int i = 0; i < n; i++) out[i] = ta[i] - tb[i];
      }};
}

VectorField scale(const ScalarField& a, const VectorField& v) {
  if (a.dim != v.dim) throw ContractError("scale: dimension mismatch");
  const int n = v.dim;
  return VectorField{n,
                     [a, v, n](const double* x, double* out) {
                       double t[kMaxDim];
                       v.f0(x, t);
                       double s = a.f0(x);
                       for (int i = 0; i < n; i++) out[i] = s * t[i];
                     },
                     [a, v, n](const Jet1* x, Jet1* out) {
                       Jet1 t[kMaxDim];
                       v.f1(x, t);
                       Jet1 s = a.f1(x);
                       for (int i = 0; i < n; i++) out[i] = s * t[i];
                     },
                     [a, v, n](const Jet2* x, Jet2* out) {
                       Jet2 t[kMaxDim];
                       v.f2(x, t);
                       Jet2 s = a.f2(x);
                       for (int i = 0; i < n; i++) out[i] = s * t[i];
                     }};
}

VectorField scale(double a, const VectorField& v) { return scale(constant_scalar(v.dim, a), v); }

ScalarField metric_pairing(const MetricField& g, const VectorField& a, const VectorField& b) {
  if (g.dim != a.dim || g.dim != b.dim) throw ContractError("metric_pairing: dimension mismatch");
  const int n = g.dim;
  return ScalarField{n,
                     [g, a, b, n](const double* x) {
                       double gm[kMaxDim * kMaxDim], ta[kMaxDim], tb[kMaxDim];
                       g.f0(x, gm);
                       a.f0(x, ta);
                       b.f0(x, tb);
                       double s = 0.0;
                       for (int i = 0; i < n; i++)
                         for (int j = 0; j < n; j++) s += gm[i * n + j] * ta[i] * tb[j];
                       return s;
                     },
                     [g, a, b, n](const Jet1* x) {
                       Jet1 gm[kMaxDim * kMaxDim], ta[kMaxDim], tb[kMaxDim];
                       g.f1(x, gm);
                       a.f1(x, ta);
                       b.f1(x, tb);
                       Jet1 s(0.0);
                       for (int i = 0; i < n; i++)
                         for (int j = 0; j < n; j++) s = s + gm[i * n + j] * ta[i] * tb[j];
                       return s;
                     },
                     [g, a, b, n](const Jet2* x) {
                       Jet2 gm[kMaxDim * kMaxDim];
                       Jet2 ta[kMaxDim], tb[kMaxDim];
                       g.f2(x, gm);
                       a.f2(x, ta);
                       b.f2(x, tb);
                       Jet2 s(0.0);
                       for (int i = 0; i < n; i++)
                         for (int j = 0; j < n; j++)
                           s = s + gm[static_cast<size_t>(i * n + j)] * ta[i] * tb[j];
                       return s;
                     }};
}

}  // namespace lorentz
