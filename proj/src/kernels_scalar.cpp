// lorentzlab - scalar reference implementations of the batch kernels

#include "lorentz/kernels.hpp"

namespace lorentz {
namespace kernels {
namespace detail {

void sym_quad_scalar(int n, const double* q, const double* const* v, int m, double* out) {
  for (int t = 0; t < m; t++) {
    double acc = 0.0;
    for (int i = 0; i < n; i++) {
      double row = 0.0;
      for (int j = 0; j < n; j++) row += q[i * n + j] * v[j][t];
      acc += row * v[i][t];
    }
    out[t] = acc;
  }
}

void sym_matvec_scalar(int n, const double* q, const double* const* v, int m,
                       double* const* out) {
  for (int i = 0; i < n; i++) {
    for (int t = 0; t < m; t++) {
      double acc = 0.0;
      for (int j = 0; j < n; j++) acc += q[i * n + j] * v[j][t];
      out[i][t] = acc;
    }
  }
}

void gc_margin_scalar(double c, const double* x2, const double* v0, const double* v1,
                      const double* v2, int m, double* out) {
  const double c2 = c * c;
  for (int t = 0; t < m; t++) {
    double s = v0[t] + x2[t] * v1[t];
    out[t] = c2 * s * s - v1[t] * v1[t] - v2[t] * v2[t];
  }
}

int argmin_scalar(const double* x, int m) {
  int best = 0;
  for (int t = 1; t < m; t++)
    if (x[t] < x[best]) best = t;
  return best;
}

}  // namespace detail
}  // namespace kernels
}  // namespace lorentz
