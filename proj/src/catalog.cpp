#include "lorentz/catalog.hpp"

#include <cmath>

#include "lorentz/gcn.hpp"

namespace lorentz {

namespace {

VecN box_vec(std::initializer_list<double> vals) { return make_vec(vals); }

MetricField flat_metric(int n, int index) {
  return MetricField::make(n, index, [n, index](const auto* /*y*/, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(*out)>>;
    for (int i = 0; i < n * n; i++) out[i] = T(0.0);
    for (int i = 0; i < n; i++) out[i * n + i] = T(i < index ? -1.0 : 1.0);
  });
}

Distribution spatial_axes(int n) {
  std::vector<VectorField> spans;
  for (int i = 1; i < n; i++) spans.push_back(coordinate_field(n, i));
  return make_distribution(spans);
}

CatalogEntry flat_entry(const std::string& id, int n, int index) {
  CatalogEntry e;
  e.id = id;
  e.summary = index == 0 ? "flat Riemannian metric" : "flat index-1 metric with spatial split";
  e.metric = flat_metric(n, index);
  e.box_lo = VecN(n);
  e.box_hi = VecN(n);
  for (int i = 0; i < n; i++) {
    e.box_lo[i] = -2.0;
    e.box_hi[i] = 2.0;
  }
  if (index == 1) {
    e.has_split = true;
    e.h = spatial_axes(n);
    e.v = make_distribution({coordinate_field(n, 0)});
    e.anchor = VecN(n);
  }
  return e;
}

void g13_split(CatalogEntry* e) {
  GcnParams params{1.0, 3, 0.0};
  Frame frame = gcn_frame(params);
  e->has_split = true;
  e->h = make_distribution({frame.fields[1], frame.fields[2]});
  e->v = make_distribution({coordinate_field(3, 0)});
  e->anchor = box_vec({0.4, -0.8, 0.6});
}

CatalogEntry g13_entry() {
  CatalogEntry e;
  e.id = "g13";
  e.summary = "twisted index-1 family member c = 1 on R^3";
  e.metric = gcn_metric(GcnParams{1.0, 3, 0.0});
  e.box_lo = box_vec({-2.0, -2.0, -2.0});
  e.box_hi = box_vec({2.0, 2.0, 2.0});
  g13_split(&e);
  return e;
}

CatalogEntry g13_perturbed_entry() {
  CatalogEntry e;
  e.id = "g13-perturbed";
  e.summary = "g13 scaled by the conformal factor 1 + 0.05 sin(x1 + x2)";
  MetricField base = gcn_metric(GcnParams{1.0, 3, 0.0});
  e.metric = MetricField::make(3, 1, [base](const auto* y, auto* out) {
    using std::sin;
    using T = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
    eval(base, y, out);
    T w = T(1.0) + sin(y[1] + y[2]) * 0.05;
    for (int i = 0; i < 9; i++) out[i] = out[i] * w;
  });
  e.box_lo = box_vec({-2.0, -2.0, -2.0});
  e.box_hi = box_vec({2.0, 2.0, 2.0});
  g13_split(&e);
  return e;
}

CatalogEntry sphere2_entry() {
  CatalogEntry e;
  e.id = "sphere2";
  e.summary = "round unit 2-sphere chart (theta, phi), scalar curvature 2";
  e.metric = MetricField::make(2, 0, [](const auto* y, auto* out) {
    using std::sin;
    using T = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
    T s = sin(y[0]);
    out[0] = T(1.0);
    out[1] = T(0.0);
    out[2] = T(0.0);
    out[3] = s * s;
  });
  e.box_lo = box_vec({0.4, 0.0});
  e.box_hi = box_vec({2.7, 3.0});
  return e;
}

CatalogEntry schwarzschild_entry() {
  CatalogEntry e;
  e.id = "schwarzschild-patch";
  e.summary = "static vacuum chart (t, r, theta, phi), mass 1: Ricci ~ 0, Weyl != 0";
  e.metric = MetricField::make(4, 1, [](const auto* y, auto* out) {
    using std::sin;
    using T = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
    for (int i = 0; i < 16; i++) out[i] = T(0.0);
    T r = y[1];
    T f = T(1.0) - 2.0 / r;
    T s = sin(y[2]);
    out[0] = T(0.0) - f;
    out[5] = T(1.0) / f;
    out[10] = r * r;
    out[15] = r * r * s * s;
  });
  e.box_lo = box_vec({-1.0, 2.6, 0.6, 0.0});
  e.box_hi = box_vec({1.0, 3.6, 2.5, 3.0});
  return e;
}

// A(y) = I + 0.1 * fixed quadratic perturbations; G = A^T diag(-1,1,1) A is
// polynomial, index 1 wherever A is invertible (all of the sample box).
template <class T>
void poly3_a(const T* y, T* a) {
  a[0] = T(1.0) + 0.1 * y[1] * y[1];
  a[1] = 0.1 * y[2] * y[0];
  a[2] = 0.1 * (y[0] + y[1]);
  a[3] = 0.1 * y[0] * y[1];
  a[4] = T(1.0) - 0.1 * y[2];
  a[5] = 0.1 * y[2] * y[2];
  a[6] = 0.1 * y[1] * y[2];
  a[7] = 0.1 * (y[0] - y[2]);
  a[8] = T(1.0) + 0.1 * y[0];
}

CatalogEntry poly3_entry() {
  CatalogEntry e;
  e.id = "poly3";
  e.summary = "fixed polynomial congruence metric of index 1 on R^3";
  e.metric = MetricField::make(3, 1, [](const auto* y, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
    T a[9];
    poly3_a(y, a);
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++) {
        T acc(0.0);
        for (int k = 0; k < 3; k++) {
          const double dk = (k == 0) ? -1.0 : 1.0;
          acc = acc + a[k * 3 + i] * a[k * 3 + j] * dk;
        }
        out[i * 3 + j] = acc;
      }
  });
  e.box_lo = box_vec({-0.8, -0.8, -0.8});
  e.box_hi = box_vec({0.8, 0.8, 0.8});
  // v_a = A^{-1} e_a satisfy g(v_a, v_b) = diag(-1,1,1)_ab, giving a
  // timelike direction and a spacelike complement plane.
  auto axis_pullback = [](int axis) {
    return VectorField::make(3, [axis](const auto* y, auto* out) {
      using T = std::remove_cv_t<std::remove_reference_t<decltype(*y)>>;
      T a[9], inv[9];
      poly3_a(y, a);
      invert_matrix(3, a, inv);
      for (int i = 0; i < 3; i++) out[i] = inv[i * 3 + axis];
    });
  };
  e.has_split = true;
  e.v = make_distribution({axis_pullback(0)});
  e.h = make_distribution({axis_pullback(1), axis_pullback(2)});
  e.anchor = box_vec({0.2, -0.3, 0.4});
  return e;
}

}  // namespace

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {
      "minkowski3", "minkowski4",     "euclidean3",          "g13",
      "g13-perturbed", "sphere2",     "schwarzschild-patch", "poly3"};
  return ids;
}

CatalogEntry catalog_entry(const std::string& id) {
  if (id == "minkowski3") return flat_entry(id, 3, 1);
  if (id == "minkowski4") return flat_entry(id, 4, 1);
  if (id == "euclidean3") return flat_entry(id, 3, 0);
  if (id == "g13") return g13_entry();
  if (id == "g13-perturbed") return g13_perturbed_entry();
  if (id == "sphere2") return sphere2_entry();
  if (id == "schwarzschild-patch") return schwarzschild_entry();
  if (id == "poly3") return poly3_entry();
  throw ContractError("catalog: unknown metric id '" + id + "'");
}

}  // namespace lorentz
