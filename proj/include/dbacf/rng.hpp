#pragma once

// Reproducible random streams. Replicate r of a run seeded with s draws from
// an engine keyed by stream_seed(s, r), so results do not depend on how
// replicates are distributed over threads.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace dbacf::rng {

inline constexpr std::uint64_t kDefaultSeed = 20190801;

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Decorrelated 64-bit seed for stream `index` of a run seeded with `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

std::mt19937_64 engine(std::uint64_t seed);

/// Hardware concurrency, at least 1. DBACF_WORKERS overrides.
unsigned default_workers();

/// Calls body(i) for i in [0, count) on up to `workers` threads (0 = default).
/// The first exception thrown by any call is rethrown after all threads join.
template <class Body>
void parallel_for(std::size_t count, Body&& body, unsigned workers = 0) {
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace dbacf::rng
