#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace merodiff {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// Applies fn(i) for i in [0, n) across hardware threads, writing results into
// a vector. Reduction order stays deterministic because each slot is fixed.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  unsigned workers = std::thread::hardware_concurrency();
  if (workers <= 1 || n < 32) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  if (workers > 8) workers = 8;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

// Pairwise summation: deterministic and more accurate than left-to-right.
inline double pairwise_sum(const std::vector<double>& xs, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += xs[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : pairwise_sum(xs, 0, xs.size());
}

}  // namespace merodiff
