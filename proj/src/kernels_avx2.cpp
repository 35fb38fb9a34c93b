// lorentzlab - AVX2+FMA implementations of the batch kernels
//
// This translation unit is compiled with -mavx2 -mfma on x86-64 targets and
// omitted elsewhere; the dispatcher only references these symbols when the
// build defines LORENTZLAB_HAVE_AVX2_TU. Tails shorter than one vector fall
// through to plain scalar code. Arithmetic order inside one lane matches the
// scalar kernel (row-major accumulation), so results differ from the scalar
// backend by rounding only; the argmin reduction is exact and tie-stable.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "lorentz/kernels.hpp"

namespace lorentz {
namespace kernels {
namespace detail {

void sym_quad_avx2(int n, const double* q, const double* const* v, int m, double* out) {
  int t = 0;
  for (; t + 4 <= m; t += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int i = 0; i < n; i++) {
      __m256d row = _mm256_setzero_pd();
      for (int j = 0; j < n; j++) {
        __m256d vj = _mm256_loadu_pd(v[j] + t);
        row = _mm256_fmadd_pd(_mm256_set1_pd(q[i * n + j]), vj, row);
      }
      __m256d vi = _mm256_loadu_pd(v[i] + t);
      acc = _mm256_fmadd_pd(row, vi, acc);
    }
    _mm256_storeu_pd(out + t, acc);
  }
  for (; t < m; t++) {
    double acc = 0.0;
    for (int i = 0; i < n; i++) {
      double row = 0.0;
      for (int j = 0; j < n; j++) row += q[i * n + j] * v[j][t];
      acc += row * v[i][t];
    }
    out[t] = acc;
  }
}

void sym_matvec_avx2(int n, const double* q, const double* const* v, int m, double* const* out) {
  for (int i = 0; i < n; i++) {
    int t = 0;
    for (; t + 4 <= m; t += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (int j = 0; j < n; j++) {
        __m256d vj = _mm256_loadu_pd(v[j] + t);
        acc = _mm256_fmadd_pd(_mm256_set1_pd(q[i * n + j]), vj, acc);
      }
      _mm256_storeu_pd(out[i] + t, acc);
    }
    for (; t < m; t++) {
      double acc = 0.0;
      for (int j = 0; j < n; j++) acc += q[i * n + j] * v[j][t];
      out[i][t] = acc;
    }
  }
}

void gc_margin_avx2(double c, const double* x2, const double* v0, const double* v1,
                    const double* v2, int m, double* out) {
  const __m256d c2 = _mm256_set1_pd(c * c);
  int t = 0;
  for (; t + 4 <= m; t += 4) {
    __m256d a0 = _mm256_loadu_pd(v0 + t);
    __m256d a1 = _mm256_loadu_pd(v1 + t);
    __m256d a2 = _mm256_loadu_pd(v2 + t);
    __m256d ax = _mm256_loadu_pd(x2 + t);
    __m256d s = _mm256_fmadd_pd(ax, a1, a0);
    __m256d r = _mm256_mul_pd(_mm256_mul_pd(c2, s), s);
    r = _mm256_sub_pd(r, _mm256_mul_pd(a1, a1));
    r = _mm256_sub_pd(r, _mm256_mul_pd(a2, a2));
    _mm256_storeu_pd(out + t, r);
  }
  const double c2s = c * c;
  for (; t < m; t++) {
    double s = v0[t] + x2[t] * v1[t];
    out[t] = c2s * s * s - v1[t] * v1[t] - v2[t] * v2[t];
  }
}

int argmin_avx2(const double* x, int m) {
  // Vector pass finds the minimum value; a scalar pass then returns its first
  // index, which keeps tie-breaking identical to the reference kernel.
  int t = 0;
  double best = x[0];
  if (m >= 4) {
    __m256d vbest = _mm256_loadu_pd(x);
    for (t = 4; t + 4 <= m; t += 4) vbest = _mm256_min_pd(vbest, _mm256_loadu_pd(x + t));
    double lanes[4];
    _mm256_storeu_pd(lanes, vbest);
    best = lanes[0];
    for (int i = 1; i < 4; i++) best = lanes[i] < best ? lanes[i] : best;
  }
  for (; t < m; t++) best = x[t] < best ? x[t] : best;
  for (int i = 0; i < m; i++)
    if (x[i] == best) return i;
  return 0;
}

}  // namespace detail
}  // namespace kernels
}  // namespace lorentz

#endif  // x86-64
