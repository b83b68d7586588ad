#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace blockset {

/// Scans [0, n) in chunks and returns the smallest hit.
///
/// `fn(lo, hi)` must return the first hit in [lo, hi) or nullopt; hits are
/// positions that increase with the index. Chunks are handed out in
/// increasing order, and chunks starting after the best hit so far are
/// skipped, so the result does not depend on the thread count.
template <class Fn>
std::optional<std::uint64_t> parallel_first(std::uint64_t n, unsigned threads, Fn&& fn,
                                            std::uint64_t chunk = 1024) {
  if (threads <= 1 || n <= chunk) {
    for (std::uint64_t lo = 0; lo < n; lo += chunk) {
      if (auto hit = fn(lo, std::min(n, lo + chunk))) return hit;
    }
    return std::nullopt;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best_lo{n};  // chunk start of the best hit
  std::optional<std::uint64_t> best;
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    try {
      while (true) {
        const std::uint64_t lo = next.fetch_add(chunk);
        if (lo >= n || lo > best_lo.load()) return;
        if (auto hit = fn(lo, std::min(n, lo + chunk))) {
          std::lock_guard lock(mu);
          if (!best || *hit < *best) best = hit;
          if (lo < best_lo.load()) best_lo.store(lo);
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      best_lo.store(0);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return best;
}

}  // namespace blockset
