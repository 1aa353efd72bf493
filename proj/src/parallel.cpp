#include "crsing/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace crsing::par {

namespace {

int default_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int initial_cap() {
  if (const char* env = std::getenv("CRSING_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return std::min(n, default_threads());
  }
  return default_threads();
}

std::atomic<int>& cap_slot() {
  static std::atomic<int> cap{initial_cap()};
  return cap;
}

}  // namespace

int thread_cap() { return cap_slot().load(std::memory_order_relaxed); }

void set_thread_cap(int n) {
  cap_slot().store(n > 0 ? n : default_threads(), std::memory_order_relaxed);
}

}  // namespace crsing::par
