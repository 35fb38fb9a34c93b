// Batch kernels: whatever backend is active must reproduce plain-loop
// references bit-for-bit tolerances and resolve argmin ties by first index.
// The build registers this binary twice, once with LORENTZLAB_KERNELS=scalar,
// so both backends run against the same oracles on AVX2 hosts.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "lorentz/kernels.hpp"

using namespace lorentz;

namespace {

struct Batch {
  int n = 0;
  int m = 0;
  std::vector<double> q;                    // symmetric n x n
  std::vector<std::vector<double>> comps;   // n arrays of length m
  std::vector<const double*> vptr;

  Batch(int n_, int m_, unsigned seed) : n(n_), m(m_) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    q.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double val = u(rng);
        q[static_cast<size_t>(i) * n + j] = val;
        q[static_cast<size_t>(j) * n + i] = val;
      }
    comps.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      comps[static_cast<size_t>(i)].resize(static_cast<size_t>(m));
      for (int t = 0; t < m; ++t) comps[static_cast<size_t>(i)][static_cast<size_t>(t)] = u(rng);
    }
    for (int i = 0; i < n; ++i) vptr.push_back(comps[static_cast<size_t>(i)].data());
  }
};

}  // namespace

TEST_CASE("backend name is reported") {
  const char* name = kernels::active_backend_name();
  REQUIRE(name != nullptr);
  const bool known = std::string(name) == "scalar" || std::string(name) == "avx2";
  CHECK(known);
  std::printf("active kernel backend: %s\n", name);
}

TEST_CASE("sym_quad matches the naive triple loop") {
  for (int n : {2, 3, 4, 6}) {
    for (int m : {1, 5, 64, 257}) {
      Batch b(n, m, static_cast<unsigned>(1000 + 17 * n + m));
      std::vector<double> out(static_cast<size_t>(m), -1.0);
      kernels::sym_quad(n, b.q.data(), b.vptr.data(), m, out.data());
      double dev = 0.0;
      for (int t = 0; t < m; ++t) {
        double want = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            want += b.q[static_cast<size_t>(i) * n + j] * b.comps[static_cast<size_t>(i)][static_cast<size_t>(t)] *
                    b.comps[static_cast<size_t>(j)][static_cast<size_t>(t)];
        dev = std::max(dev, std::fabs(out[static_cast<size_t>(t)] - want));
      }
      CHECK(dev < 1e-12);
    }
  }
}

TEST_CASE("sym_matvec matches the naive double loop") {
  for (int n : {2, 3, 5}) {
    for (int m : {1, 33, 128}) {
      Batch b(n, m, static_cast<unsigned>(2000 + 13 * n + m));
      std::vector<std::vector<double>> out(static_cast<size_t>(n),
                                           std::vector<double>(static_cast<size_t>(m), 0.0));
      std::vector<double*> optr;
      for (int i = 0; i < n; ++i) optr.push_back(out[static_cast<size_t>(i)].data());
      kernels::sym_matvec(n, b.q.data(), b.vptr.data(), m, optr.data());
      double dev = 0.0;
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < m; ++t) {
          double want = 0.0;
          for (int j = 0; j < n; ++j)
            want += b.q[static_cast<size_t>(i) * n + j] *
                    b.comps[static_cast<size_t>(j)][static_cast<size_t>(t)];
          dev = std::max(dev, std::fabs(out[static_cast<size_t>(i)][static_cast<size_t>(t)] - want));
        }
      CHECK(dev < 1e-12);
    }
  }
}

TEST_CASE("gc_margin matches the formula") {
  std::mt19937_64 rng(333);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double c = 1.7;
  for (int m : {1, 7, 100, 255}) {
    std::vector<double> x2(static_cast<size_t>(m)), v0(static_cast<size_t>(m)),
        v1(static_cast<size_t>(m)), v2(static_cast<size_t>(m)), out(static_cast<size_t>(m));
    for (int t = 0; t < m; ++t) {
      x2[static_cast<size_t>(t)] = u(rng);
      v0[static_cast<size_t>(t)] = u(rng);
      v1[static_cast<size_t>(t)] = u(rng);
      v2[static_cast<size_t>(t)] = u(rng);
    }
    kernels::gc_margin(c, x2.data(), v0.data(), v1.data(), v2.data(), m, out.data());
    double dev = 0.0;
    for (int t = 0; t < m; ++t) {
      const size_t s = static_cast<size_t>(t);
      const double w = c * c * (v0[s] + x2[s] * v1[s]) * (v0[s] + x2[s] * v1[s]) -
                       v1[s] * v1[s] - v2[s] * v2[s];
      dev = std::max(dev, std::fabs(out[s] - w));
    }
    CHECK(dev < 1e-12);
  }
}

TEST_CASE("argmin picks the first occurrence on exact ties") {
  const double a[6] = {3.0, 1.0, 2.0, 1.0, 1.0, 5.0};
  CHECK(kernels::argmin(a, 6) == 1);
  const double b[1] = {4.0};
  CHECK(kernels::argmin(b, 1) == 0);
  const double cns[5] = {2.0, 2.0, 2.0, 2.0, 2.0};
  CHECK(kernels::argmin(cns, 5) == 0);
  // long tied block so vector lanes must not steal the win
  std::vector<double> big(1000, 7.0);
  big[483] = -1.0;
  big[484] = -1.0;
  CHECK(kernels::argmin(big.data(), 1000) == 483);
}

TEST_CASE("random argmin agrees with std reference") {
  std::mt19937_64 rng(999);
  std::uniform_int_distribution<int> len(1, 300);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = len(rng);
    std::vector<double> x(static_cast<size_t>(m));
    for (double& v : x) v = u(rng);
    int want = 0;
    for (int t = 1; t < m; ++t)
      if (x[static_cast<size_t>(t)] < x[static_cast<size_t>(want)]) want = t;
    CHECK(kernels::argmin(x.data(), m) == want);
  }
}
