// lorentzlab - fixed-capacity dense vectors/matrices and small linear algebra
//
// Everything in this toolkit lives in chart dimension n <= kMaxDim, so vectors
// and matrices are stack-allocated with a runtime size. The solvers are
// templated on the scalar type so they work for plain doubles and for jet
// (dual-number) scalars alike; pivoting compares |value| of the scalar.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>

namespace lorentz {

inline constexpr int kMaxDim = 8;
inline constexpr double kPi = 3.14159265358979323846;

// Base error type for contract/domain failures; subtypes let callers
// distinguish the failure classes named in the API contracts.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& msg) : Error(msg) {}
};
class DegeneracyError : public Error {
 public:
  explicit DegeneracyError(const std::string& msg) : Error(msg) {}
};
class TransversalityError : public Error {
 public:
  explicit TransversalityError(const std::string& msg) : Error(msg) {}
};
class UnsupportedIndexError : public Error {
 public:
  explicit UnsupportedIndexError(const std::string& msg) : Error(msg) {}
};
class EvalDomainError : public Error {
 public:
  explicit EvalDomainError(const std::string& msg) : Error(msg) {}
};
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& msg, double last_valid_t)
      : Error(msg), last_valid_time(last_valid_t) {}
  double last_valid_time;
};
class DomainEscapeError : public Error {
 public:
  explicit DomainEscapeError(const std::string& msg) : Error(msg) {}
};

// value(): scalar magnitude hook used for pivoting in the templated solvers.
inline double value(double x) { return x; }

// Dense vector of doubles with runtime size <= kMaxDim.
struct VecN {
  int n = 0;
  std::array<double, kMaxDim> a{};

  VecN() = default;
  explicit VecN(int dim) : n(dim) { a.fill(0.0); }
  double& operator[](int i) { return a[static_cast<size_t>(i)]; }
  double operator[](int i) const { return a[static_cast<size_t>(i)]; }
  const double* data() const { return a.data(); }
  double* data() { return a.data(); }
};

// Dense row-major matrix of doubles with runtime size <= kMaxDim per side.
struct MatN {
  int rows = 0;
  int cols = 0;
  std::array<double, kMaxDim * kMaxDim> a{};

  MatN() = default;
  MatN(int r, int c) : rows(r), cols(c) { a.fill(0.0); }
  double& operator()(int i, int j) { return a[static_cast<size_t>(i * cols + j)]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i * cols + j)]; }
};

inline VecN make_vec(int n, const double* src) {
  VecN v(n);
  for (int i = 0; i < n; i++) v[i] = src[i];
  return v;
}

inline VecN make_vec(std::initializer_list<double> src) {
  VecN v(static_cast<int>(src.size()));
  int i = 0;
  for (double x : src) v[i++] = x;
  return v;
}

inline double dot(const VecN& x, const VecN& y) {
  double s = 0.0;
  for (int i = 0; i < x.n; i++) s += x[i] * y[i];
  return s;
}

inline double norm2(const VecN& x) { return std::sqrt(dot(x, x)); }

// Solve A X = B in place by Gaussian elimination with partial pivoting.
// A is n x n row-major (destroyed), B is n x m row-major (replaced by X).
// Templated over the scalar so jet types can be solved as well.
template <class T>
void solve_inplace(int n, int m, T* A, T* B) {
  for (int col = 0; col < n; col++) {
    int piv = col;
    double best = std::fabs(value(A[col * n + col]));
    for (int r = col + 1; r < n; r++) {
      double cand = std::fabs(value(A[r * n + col]));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (!(best > 0.0)) throw DegeneracyError("singular matrix in linear solve");
    if (piv != col) {
      for (int j = 0; j < n; j++) std::swap(A[col * n + j], A[piv * n + j]);
      for (int j = 0; j < m; j++) std::swap(B[col * m + j], B[piv * m + j]);
    }
    for (int r = col + 1; r < n; r++) {
      T factor = A[r * n + col] / A[col * n + col];
      for (int j = col; j < n; j++) A[r * n + j] = A[r * n + j] - factor * A[col * n + j];
      for (int j = 0; j < m; j++) B[r * m + j] = B[r * m + j] - factor * B[col * m + j];
    }
  }
  for (int col = n - 1; col >= 0; col--) {
    for (int j = 0; j < m; j++) {
      T s = B[col * m + j];
      for (int k = col + 1; k < n; k++) s = s - A[col * n + k] * B[k * m + j];
      B[col * m + j] = s / A[col * n + col];
    }
  }
}

// Invert an n x n row-major matrix (templated scalar).
template <class T>
void invert_matrix(int n, const T* A, T* out) {
  T work[kMaxDim * kMaxDim];
  for (int i = 0; i < n * n; i++) {
    work[i] = A[i];
    out[i] = T(0.0);
  }
  for (int i = 0; i < n; i++) out[i * n + i] = T(1.0);
  solve_inplace(n, n, work, out);
}

// Jacobi eigendecomposition of a symmetric matrix (doubles only).
// Eigenvalues ascending; eigenvectors returned as rows of `vecs`
// (vecs[k*n+i] = component i of the k-th eigenvector), orthonormal.
inline void sym_eigen(int n, const double* A, double* vals, double* vecs) {
  double m[kMaxDim][kMaxDim];
  double v[kMaxDim][kMaxDim];
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      m[i][j] = 0.5 * (A[i * n + j] + A[j * n + i]);
      v[i][j] = (i == j) ? 1.0 : 0.0;
    }
  for (int sweep = 0; sweep < 64; sweep++) {
    double off = 0.0;
    for (int i = 0; i < n; i++)
      for (int j = i + 1; j < n; j++) off += m[i][j] * m[i][j];
    if (off < 1e-300) break;
    for (int p = 0; p < n; p++) {
      for (int q = p + 1; q < n; q++) {
        if (std::fabs(m[p][q]) < 1e-300) continue;
        double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; k++) {
          double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; k++) {
          double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
        for (int k = 0; k < n; k++) {
          double vpk = v[p][k], vqk = v[q][k];
          v[p][k] = c * vpk - s * vqk;
          v[q][k] = s * vpk + c * vqk;
        }
      }
    }
  }
  int order[kMaxDim];
  for (int i = 0; i < n; i++) order[i] = i;
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++)
      if (m[order[j]][order[j]] < m[order[i]][order[i]]) std::swap(order[i], order[j]);
  for (int k = 0; k < n; k++) {
    vals[k] = m[order[k]][order[k]];
    for (int i = 0; i < n; i++) vecs[k * n + i] = v[order[k]][i];
  }
}

// Count of negative eigenvalues of a symmetric matrix (metric index).
inline int metric_index(int n, const double* A) {
  double vals[kMaxDim], vecs[kMaxDim * kMaxDim];
  sym_eigen(n, A, vals, vecs);
  int q = 0;
  for (int i = 0; i < n; i++)
    if (vals[i] < 0.0) q++;
  return q;
}

// Largest/smallest singular value of an r x c matrix via eigen of the Gram
// matrix of the smaller side, so a wide matrix of full row rank reports the
// smallest nonzero singular value rather than a structural zero.
inline void singular_range(int r, int c, const double* M, double* smin, double* smax) {
  double gram[kMaxDim * kMaxDim];
  int side = (r <= c) ? r : c;
  if (r <= c) {
    for (int i = 0; i < r; i++)
      for (int j = 0; j < r; j++) {
        double s = 0.0;
        for (int k = 0; k < c; k++) s += M[i * c + k] * M[j * c + k];
        gram[i * r + j] = s;
      }
  } else {
    for (int i = 0; i < c; i++)
      for (int j = 0; j < c; j++) {
        double s = 0.0;
        for (int k = 0; k < r; k++) s += M[k * c + i] * M[k * c + j];
        gram[i * c + j] = s;
      }
  }
  double vals[kMaxDim], vecs[kMaxDim * kMaxDim];
  sym_eigen(side, gram, vals, vecs);
  *smin = std::sqrt(std::max(0.0, vals[0]));
  *smax = std::sqrt(std::max(0.0, vals[side - 1]));
}

}  // namespace lorentz
