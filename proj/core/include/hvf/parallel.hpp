#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace hvf {

/// Parallel width: HVF_THREADS if set to a positive integer, else the core count.
int thread_count();

/// Evaluates fn(i) for i in [0, n) on thread_count() threads. Results are
/// stored by index, so any later reduction over them is order-fixed and the
/// output does not depend on the thread count.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<R> out(n);
  const std::size_t width =
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), std::max<std::size_t>(n, 1));
  if (width <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(width);
  std::vector<std::thread> pool;
  pool.reserve(width);
  for (std::size_t t = 0; t < width; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += width) out[i] = fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Left-to-right sum; the reduction order is part of the determinism contract.
double ordered_sum(const std::vector<double>& values);

}  // namespace hvf
