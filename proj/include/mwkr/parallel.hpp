#pragma once

// Deterministic reductions and the serial / OpenMP loop drivers every kernel
// is built on. Sums always go through pairwise_sum over a per-index term
// buffer, so the serial and parallel drivers produce bit-identical results at
// any thread count.

#include <cstddef>
#include <exception>
#include <limits>
#include <span>
#include <vector>

#include <omp.h>

namespace mwkr {

/// Balanced binary-tree sum: split at n/2 down to single terms. For 2^k equal
/// terms every partial sum is exact.
double pairwise_sum(std::span<const double> terms);

void set_thread_count(int threads);
int thread_count();

namespace kernels {

template <class Body>
void for_serial(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

template <class Body>
void for_parallel(std::size_t n, Body&& body) {
  std::exception_ptr error;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(mwkr_for_parallel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

template <class Term>
double sum_serial(std::size_t n, Term&& term) {
  std::vector<double> buffer(n);
  for_serial(n, [&](std::size_t i) { buffer[i] = term(i); });
  return pairwise_sum(buffer);
}

template <class Term>
double sum_parallel(std::size_t n, Term&& term) {
  std::vector<double> buffer(n);
  for_parallel(n, [&](std::size_t i) { buffer[i] = term(i); });
  return pairwise_sum(buffer);
}

template <class Term>
double max_serial(std::size_t n, Term&& term) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double v = term(i);
    if (v > best) best = v;
  }
  return best;
}

template <class Term>
double max_parallel(std::size_t n, Term&& term) {
  std::vector<double> buffer(n);
  for_parallel(n, [&](std::size_t i) { buffer[i] = term(i); });
  double best = -std::numeric_limits<double>::infinity();
  for (double v : buffer)
    if (v > best) best = v;
  return best;
}

}  // namespace kernels

/// Selects the loop driver for a kernel. Both backends give bit-identical
/// results; serial is the reference.
enum class Backend { serial, openmp };

template <class Body>
void for_each_index(Backend backend, std::size_t n, Body&& body) {
  if (backend == Backend::serial)
    kernels::for_serial(n, body);
  else
    kernels::for_parallel(n, body);
}

template <class Term>
double sum_terms(Backend backend, std::size_t n, Term&& term) {
  return backend == Backend::serial ? kernels::sum_serial(n, term) : kernels::sum_parallel(n, term);
}

template <class Term>
double max_terms(Backend backend, std::size_t n, Term&& term) {
  return backend == Backend::serial ? kernels::max_serial(n, term) : kernels::max_parallel(n, term);
}

}  // namespace mwkr
