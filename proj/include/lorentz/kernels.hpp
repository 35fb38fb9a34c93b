// lorentzlab - batch kernels for sampling loops
//
// Structure-of-arrays primitives used by the cone samplers and path
// validators: quadratic forms, matrix-vector sweeps, causal margins of the
// metric family, and first-index argmin reductions. A scalar reference
// implementation always exists; an AVX2+FMA variant is selected at runtime
// on capable x86-64 hosts. Both produce results that agree to within a few
// ulp, and the reductions resolve ties by first index so verdicts and
// witnesses do not depend on the backend.
//
// Backend selection: env LORENTZLAB_KERNELS = scalar | avx2 | auto (default
// auto). Requesting avx2 on a host without it falls back to scalar; the
// active name is queryable for report echo.

#pragma once

namespace lorentz {
namespace kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* active_backend_name();

// out[t] = sum_{i,j} q[i*n+j] * v[i][t] * v[j][t]; q is a symmetric n x n
// matrix, v points to n component arrays of length m.
void sym_quad(int n, const double* q, const double* const* v, int m, double* out);

// out[i][t] = sum_j q[i*n+j] * v[j][t]; out points at n arrays of length m.
void sym_matvec(int n, const double* q, const double* const* v, int m, double* const* out);

// Causal margin of the stacked-frame family metric along a path sample set:
// out[t] = c^2*(v0[t] + x2[t]*v1[t])^2 - v1[t]^2 - v2[t]^2
// (positive = timelike for the 3-block of the family).
void gc_margin(double c, const double* x2, const double* v0, const double* v1, const double* v2,
               int m, double* out);

// Index of the smallest entry, first occurrence on ties; m >= 1.
int argmin(const double* x, int m);

}  // namespace kernels
}  // namespace lorentz
