#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace latqd {

/// Worker count for engine-internal loops. Results never depend on it.
struct Exec {
  unsigned threads = 1;
};

inline unsigned hardware_threads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(i) for every i in [0, count), striding indices over the workers.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&fn, w, workers, count] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
}

/// Pairwise reduction over [lo, hi). The tree shape depends only on the
/// number of parts, so the rounding pattern is fixed for a given input size.
template <class T, class Add>
T tree_reduce(std::vector<T>& parts, std::size_t lo, std::size_t hi, Add&& add) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  T left = tree_reduce(parts, lo, mid, add);
  T right = tree_reduce(parts, mid, hi, add);
  add(left, right);
  return left;
}

}  // namespace latqd
