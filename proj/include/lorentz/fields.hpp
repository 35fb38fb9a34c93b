// lorentzlab - evaluable scalar/vector/metric fields on a coordinate chart
//
// A field stores three evaluators of the same closed-form expression, one per
// scalar type (double, Jet1, Jet2), normally instantiated from a single
// generic lambda via make(). This gives exact first/second derivatives of
// every catalog field and of any combinator built on top, while keeping a
// plain-double fast path for sampling loops.

#pragma once

#include <functional>

#include "lorentz/ad.hpp"
#include "lorentz/smallmat.hpp"

namespace lorentz {

enum class DerivMode { dual, finite_difference };

// ---------------------------------------------------------------------------
// Field types. Evaluators receive a pointer to `dim` scalars; vector/metric
// evaluators fill `dim` / `dim*dim` (row-major) output scalars.

struct ScalarField {
  int dim = 0;
  std::function<double(const double*)> f0;
  std::function<Jet1(const Jet1*)> f1;
  std::function<Jet2(const Jet2*)> f2;

  template <class F>
  static ScalarField make(int dim, F f) {
    ScalarField s;
    s.dim = dim;
    s.f0 = [f](const double* x) -> double { return f(x); };
    s.f1 = [f](const Jet1* x) -> Jet1 { return f(x); };
    s.f2 = [f](const Jet2* x) -> Jet2 { return f(x); };
    return s;
  }
};

struct VectorField {
  int dim = 0;
  std::function<void(const double*, double*)> f0;
  std::function<void(const Jet1*, Jet1*)> f1;
  std::function<void(const Jet2*, Jet2*)> f2;

  template <class F>
  static VectorField make(int dim, F f) {
    VectorField v;
    v.dim = dim;
    v.f0 = [f](const double* x, double* out) { f(x, out); };
    v.f1 = [f](const Jet1* x, Jet1* out) { f(x, out); };
    v.f2 = [f](const Jet2* x, Jet2* out) { f(x, out); };
    return v;
  }
};

struct MetricField {
  int dim = 0;
  int index = 0;  // number of negative eigenvalues (0 = Riemannian, 1 = Lorentzian)
  std::function<void(const double*, double*)> f0;
  std::function<void(const Jet1*, Jet1*)> f1;
  std::function<void(const Jet2*, Jet2*)> f2;

  template <class F>
  static MetricField make(int dim, int index, F f) {
    MetricField g;
    g.dim = dim;
    g.index = index;
    g.f0 = [f](const double* x, double* out) { f(x, out); };
    g.f1 = [f](const Jet1* x, Jet1* out) { f(x, out); };
    g.f2 = [f](const Jet2* x, Jet2* out) { f(x, out); };
    return g;
  }
};

// Level dispatch so generic code can evaluate a field at any scalar type.
inline double eval(const ScalarField& f, const double* x) { return f.f0(x); }
inline Jet1 eval(const ScalarField& f, const Jet1* x) { return f.f1(x); }
inline Jet2 eval(const ScalarField& f, const Jet2* x) { return f.f2(x); }
inline void eval(const VectorField& v, const double* x, double* out) { v.f0(x, out); }
inline void eval(const VectorField& v, const Jet1* x, Jet1* out) { v.f1(x, out); }
inline void eval(const VectorField& v, const Jet2* x, Jet2* out) { v.f2(x, out); }
inline void eval(const MetricField& g, const double* x, double* out) { g.f0(x, out); }
inline void eval(const MetricField& g, const Jet1* x, Jet1* out) { g.f1(x, out); }
inline void eval(const MetricField& g, const Jet2* x, Jet2* out) { g.f2(x, out); }

// ---------------------------------------------------------------------------
// Jets: value plus requested derivative arrays at a point.

struct ScalarJet {
  int n = 0;
  int order = 0;
  double value = 0.0;
  VecN grad;  // order >= 1
  MatN hess;  // order >= 2
};

struct VectorJet {
  int n = 0;
  int order = 0;
  VecN value;
  MatN jac;                          // jac(i,j) = dX^i/dx_j
  std::array<MatN, kMaxDim> hess{};  // hess[i](j,k) = d2 X^i / dx_j dx_k
};

struct MetricJet {
  int n = 0;
  int order = 0;
  MatN value;
  std::array<MatN, kMaxDim> d1{};  // d1[k](i,j) = d g_ij / dx_k
  // d2[k * kMaxDim + l](i,j) = d2 g_ij / dx_k dx_l
  std::array<MatN, kMaxDim * kMaxDim> d2{};

  const MatN& dg(int k) const { return d1[static_cast<size_t>(k)]; }
  const MatN& ddg(int k, int l) const { return d2[static_cast<size_t>(k * kMaxDim + l)]; }
};

ScalarJet evaluate_jet(const ScalarField& f, const VecN& x, int order,
                       DerivMode mode = DerivMode::dual, double fd_step = 1e-5);
VectorJet evaluate_jet(const VectorField& v, const VecN& x, int order,
                       DerivMode mode = DerivMode::dual, double fd_step = 1e-5);
MetricJet evaluate_jet(const MetricField& g, const VecN& x, int order,
                       DerivMode mode = DerivMode::dual, double fd_step = 1e-5);

// Plain-value evaluation at a point (order-0 convenience wrappers).
double eval_value(const ScalarField& f, const VecN& x);
VecN eval_value(const VectorField& v, const VecN& x);
MatN eval_value(const MetricField& g, const VecN& x);

// ---------------------------------------------------------------------------
// Lie bracket [X,Y]^i = X^j dY^i/dx_j - Y^j dX^i/dx_j.

VecN lie_bracket(const VectorField& x_field, const VectorField& y_field, const VecN& x);

// The bracket as an evaluable field. Value evaluation differentiates the
// operands once; Jet1 evaluation differentiates them twice (chain rule on the
// input jets). Jet2 evaluation would need third derivatives of the operands
// and throws EvalDomainError; nothing in the suite nests brackets that deep.
VectorField lie_bracket_field(const VectorField& x_field, const VectorField& y_field);

// ---------------------------------------------------------------------------
// Combinators (all dimension-checked; mismatch throws ContractError).

ScalarField constant_scalar(int dim, double value);
VectorField coordinate_field(int dim, int axis);            // d/dx_axis
VectorField constant_vector(int dim, const VecN& comps);
VectorField add(const VectorField& a, const VectorField& b);
VectorField sub(const VectorField& a, const VectorField& b);
VectorField scale(const ScalarField& a, const VectorField& v);
VectorField scale(double a, const VectorField& v);
ScalarField metric_pairing(const MetricField& g, const VectorField& a, const VectorField& b);

}  // namespace lorentz
