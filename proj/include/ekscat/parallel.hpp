#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <thread>
#include <vector>

namespace ekscat {

/// Worker count to use when the caller asks for 0 ("machine parallelism").
inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [first, last] into chunks of `chunk` integers, runs
/// produce(lo, hi) (hi exclusive) on up to `workers` chunks at a time and
/// hands the results to consume() strictly in ascending chunk order. The
/// consumer sees the same sequence for every worker count.
template <class Produce, class Consume>
void ordered_chunks(std::uint64_t first, std::uint64_t last, std::uint64_t chunk,
                    unsigned workers, Produce&& produce, Consume&& consume) {
  if (first > last) return;
  chunk = std::max<std::uint64_t>(chunk, 1);
  workers = std::max(1u, workers);
  std::uint64_t lo = first;
  if (workers == 1) {
    while (lo <= last) {
      const std::uint64_t hi = std::min(last + 1, lo + chunk);
      consume(produce(lo, hi));
      lo = hi;
    }
    return;
  }
  using Result = decltype(produce(lo, lo));
  while (lo <= last) {
    std::vector<std::future<Result>> batch;
    for (unsigned w = 0; w < workers && lo <= last; ++w) {
      const std::uint64_t hi = std::min(last + 1, lo + chunk);
      batch.push_back(std::async(std::launch::async, [&produce, lo, hi] { return produce(lo, hi); }));
      lo = hi;
    }
    for (auto& f : batch) consume(f.get());
  }
}

}  // namespace ekscat
