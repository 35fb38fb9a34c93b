// lorentzlab - runtime backend selection for the batch kernels

#include <cstdlib>
#include <cstring>

#include "lorentz/kernels.hpp"

namespace lorentz {
namespace kernels {

namespace detail {

void sym_quad_scalar(int n, const double* q, const double* const* v, int m, double* out);
void sym_matvec_scalar(int n, const double* q, const double* const* v, int m, double* const* out);
void gc_margin_scalar(double c, const double* x2, const double* v0, const double* v1,
                      const double* v2, int m, double* out);
int argmin_scalar(const double* x, int m);

#if defined(LORENTZLAB_HAVE_AVX2_TU)
void sym_quad_avx2(int n, const double* q, const double* const* v, int m, double* out);
void sym_matvec_avx2(int n, const double* q, const double* const* v, int m, double* const* out);
void gc_margin_avx2(double c, const double* x2, const double* v0, const double* v1,
                    const double* v2, int m, double* out);
int argmin_avx2(const double* x, int m);
#endif

}  // namespace detail

namespace {

bool avx2_host() {
#if defined(LORENTZLAB_HAVE_AVX2_TU) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend pick_backend() {
  const char* env = std::getenv("LORENTZLAB_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Backend::scalar;
  if (env != nullptr && std::strcmp(env, "avx2") == 0)
    return avx2_host() ? Backend::avx2 : Backend::scalar;
  // auto (default, or any unrecognized value)
  return avx2_host() ? Backend::avx2 : Backend::scalar;
}

Backend g_backend = pick_backend();

}  // namespace

Backend active_backend() { return g_backend; }

const char* active_backend_name() {
  return g_backend == Backend::avx2 ? "avx2" : "scalar";
}

void sym_quad(int n, const double* q, const double* const* v, int m, double* out) {
#if defined(LORENTZLAB_HAVE_AVX2_TU)
  if (g_backend == Backend::avx2) {
    detail::sym_quad_avx2(n, q, v, m, out);
    return;
  }
#endif
  detail::sym_quad_scalar(n, q, v, m, out);
}

void sym_matvec(int n, const double* q, const double* const* v, int m, double* const* out) {
#if defined(LORENTZLAB_HAVE_AVX2_TU)
  if (g_backend == Backend::avx2) {
    detail::sym_matvec_avx2(n, q, v, m, out);
    return;
  }
#endif
  detail::sym_matvec_scalar(n, q, v, m, out);
}

void gc_margin(double c, const double* x2, const double* v0, const double* v1, const double* v2,
               int m, double* out) {
#if defined(LORENTZLAB_HAVE_AVX2_TU)
  if (g_backend == Backend::avx2) {
    detail::gc_margin_avx2(c, x2, v0, v1, v2, m, out);
    return;
  }
#endif
  detail::gc_margin_scalar(c, x2, v0, v1, v2, m, out);
}

int argmin(const double* x, int m) {
#if defined(LORENTZLAB_HAVE_AVX2_TU)
  if (g_backend == Backend::avx2) return detail::argmin_avx2(x, m);
#endif
  return detail::argmin_scalar(x, m);
}

}  // namespace kernels
}  // namespace lorentz
