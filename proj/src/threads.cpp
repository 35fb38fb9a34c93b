// lorentzlab - deterministic data-parallel loop helper

#include "lorentz/threads.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace lorentz {

int thread_count() {
  if (const char* env = std::getenv("LORENTZLAB_THREADS")) {
    try {
      int k = std::stoi(env);
      if (k >= 1) return k;
    } catch (...) {
      // fall through to hardware default on unparsable values
    }
    return 1;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int begin, int end, const std::function<void(int)>& body) {
  const int count = end - begin;
  if (count <= 0) return;
  int workers = thread_count();
  if (workers > count) workers = count;
  if (workers <= 1 || count == 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  // Per-worker first exception, rethrown for the smallest failing index so
  // error propagation does not depend on scheduling.
  std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
  std::vector<int> error_index(static_cast<size_t>(workers), end);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int lo = begin + static_cast<int>(static_cast<long long>(count) * w / workers);
    const int hi = begin + static_cast<int>(static_cast<long long>(count) * (w + 1) / workers);
    pool.emplace_back([lo, hi, w, &body, &errors, &error_index] {
      for (int i = lo; i < hi; ++i) {
        try {
          body(i);
        } catch (...) {
          errors[static_cast<size_t>(w)] = std::current_exception();
          error_index[static_cast<size_t>(w)] = i;
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  int first = end;
  std::exception_ptr to_throw;
  for (int w = 0; w < workers; ++w) {
    if (errors[static_cast<size_t>(w)] && error_index[static_cast<size_t>(w)] < first) {
      first = error_index[static_cast<size_t>(w)];
      to_throw = errors[static_cast<size_t>(w)];
    }
  }
  if (to_throw) std::rethrow_exception(to_throw);
}

}  // namespace lorentz
