#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace artin {

// Worker count from ARTIN_THREADS, falling back to the hardware count.
inline unsigned default_threads() {
  if (const char* env = std::getenv("ARTIN_THREADS"); env != nullptr && *env != '\0') {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Evaluates fn(i) for every i in [0, chunks) on up to `threads` workers and
// returns the results indexed by i. The output never depends on scheduling,
// so callers merging in index order get thread-count-independent results.
// If any chunk throws, the exception of the lowest failing index is rethrown.
template <class Fn>
auto parallel_chunks(std::size_t chunks, unsigned threads, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<R>> slots(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < chunks; i = next.fetch_add(1)) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const auto n = static_cast<std::size_t>(std::max(1u, threads));
  const std::size_t spawned = std::min(n, chunks) > 0 ? std::min(n, chunks) - 1 : 0;
  std::vector<std::thread> pool;
  pool.reserve(spawned);
  for (std::size_t t = 0; t < spawned; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(chunks);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace artin
