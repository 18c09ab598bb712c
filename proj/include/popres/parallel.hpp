#pragma once

#include <cstdint>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace popres {

struct ParallelConfig {
  int workers = 1;
  // Distinct tasks get distinct RNG streams even under the same seed; the
  // recovery pipeline hands each estimation stage its own id.
  std::uint64_t task_id = 0;
};

// Near-even split of `total` across `workers`, remainder on the front.
// Worker w always receives the same count for a given (total, workers),
// which the determinism contract relies on.
inline std::vector<std::uint64_t> split_counts(std::uint64_t total,
                                               int workers) {
  if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(workers));
  const std::uint64_t base = total / static_cast<std::uint64_t>(workers);
  const std::uint64_t extra = total % static_cast<std::uint64_t>(workers);
  for (std::size_t w = 0; w < counts.size(); ++w) {
    counts[w] = base + (w < extra ? 1u : 0u);
  }
  return counts;
}

// Runs fn(worker_index) on its own thread per worker and returns the
// results indexed by worker. Callers combine the partials in worker order
// so the floating-point result is independent of scheduling. The first
// worker exception (in worker order) is rethrown.
template <typename F>
std::vector<double> run_worker_partials(int workers, F&& fn) {
  if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
  std::vector<double> partials(static_cast<std::size_t>(workers), 0.0);
  if (workers == 1) {
    partials[0] = fn(0);
    return partials;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      try {
        partials[static_cast<std::size_t>(w)] = fn(w);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return partials;
}

}  // namespace popres
