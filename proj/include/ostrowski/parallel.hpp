#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ostrowski {

/// Block size for chunked scans. Fixed, so the partition (and therefore every
/// floating-point reduction order) is independent of the thread count.
inline constexpr std::uint64_t kScanBlock = std::uint64_t{1} << 16;

/// Splits [0, total) into fixed blocks, evaluates fn(begin, end) for each on
/// up to `threads` workers and returns the results in block order.
template <class Result, class Fn>
std::vector<Result> run_blocks(std::uint64_t total, unsigned threads, Fn&& fn,
                               std::uint64_t block = kScanBlock) {
  const std::uint64_t count = (total + block - 1) / block;
  std::vector<Result> results(count);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::uint64_t b = next++; b < count; b = next++) {
      try {
        results[b] = fn(b * block, std::min(total, (b + 1) * block));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(count, 1)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace ostrowski
