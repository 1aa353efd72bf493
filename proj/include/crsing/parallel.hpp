#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crsing::par {

// Number of threads the kernels may use. Reads CRSING_THREADS once on first
// use; set_thread_cap overrides it (n <= 0 restores the OpenMP default).
int thread_cap();
void set_thread_cap(int n);

// Elementwise loop: body(i) must touch only state owned by index i, so the
// parallel kernel and its serial reference produce bitwise-identical output.
template <typename Body>
void for_each_index_serial(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

template <typename Body>
void for_each_index(std::size_t n, Body&& body) {
#ifdef _OPENMP
  const long long nn = static_cast<long long>(n);
#pragma omp parallel for num_threads(thread_cap()) schedule(static)
  for (long long i = 0; i < nn; ++i) body(static_cast<std::size_t>(i));
#else
  for_each_index_serial(n, body);
#endif
}

// max/min reductions of f(i). Exact (no rounding), hence order-independent.
template <typename F>
double max_map_serial(std::size_t n, F&& f) {
  double acc = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) acc = std::max(acc, f(i));
  return acc;
}

template <typename F>
double max_map(std::size_t n, F&& f) {
#ifdef _OPENMP
  double acc = -std::numeric_limits<double>::infinity();
  const long long nn = static_cast<long long>(n);
#pragma omp parallel for num_threads(thread_cap()) schedule(static) \
    reduction(max : acc)
  for (long long i = 0; i < nn; ++i)
    acc = std::max(acc, f(static_cast<std::size_t>(i)));
  return acc;
#else
  return max_map_serial(n, f);
#endif
}

template <typename F>
double min_map_serial(std::size_t n, F&& f) {
  double acc = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) acc = std::min(acc, f(i));
  return acc;
}

template <typename F>
double min_map(std::size_t n, F&& f) {
#ifdef _OPENMP
  double acc = std::numeric_limits<double>::infinity();
  const long long nn = static_cast<long long>(n);
#pragma omp parallel for num_threads(thread_cap()) schedule(static) \
    reduction(min : acc)
  for (long long i = 0; i < nn; ++i)
    acc = std::min(acc, f(static_cast<std::size_t>(i)));
  return acc;
#else
  return min_map_serial(n, f);
#endif
}

}  // namespace crsing::par
