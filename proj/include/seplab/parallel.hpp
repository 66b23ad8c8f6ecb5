#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace seplab {

/// Worker-count independent helpers. Every reduction here is performed in
/// index order, so results never depend on `jobs` or on scheduling.
namespace parallel {

inline constexpr std::uint64_t kChunk = 64;

/// Least index i in [0, count) with fn(i) engaged, together with the value.
template <typename Fn>
auto first_match(std::uint64_t count, int jobs, Fn&& fn)
    -> std::optional<std::pair<std::uint64_t, typename std::invoke_result_t<Fn&, std::uint64_t>::value_type>> {
  using Value = typename std::invoke_result_t<Fn&, std::uint64_t>::value_type;
  using Result = std::optional<std::pair<std::uint64_t, Value>>;
  if (jobs <= 1 || count <= kChunk) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (auto r = fn(i)) return Result{std::in_place, i, std::move(*r)};
    return std::nullopt;
  }
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> best{count};
  std::mutex mu;
  Result found;
  auto worker = [&] {
    for (;;) {
      std::uint64_t begin = next_chunk.fetch_add(1) * kChunk;
      if (begin >= count || begin > best.load()) return;
      std::uint64_t end = std::min(count, begin + kChunk);
      for (std::uint64_t i = begin; i < end && i < best.load(); ++i) {
        if (auto r = fn(i)) {
          std::lock_guard lock(mu);
          if (i < best.load()) {
            best.store(i);
            found.emplace(i, std::move(*r));
          }
          break;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return found;
}

/// Ordered map-reduce: partial results of consecutive chunks are combined
/// left to right, so `combine` only needs to be associative.
template <typename T, typename Map, typename Combine>
T reduce(std::uint64_t count, int jobs, T init, Map&& map, Combine&& combine) {
  if (jobs <= 1 || count <= kChunk) {
    for (std::uint64_t i = 0; i < count; ++i) init = combine(std::move(init), map(i));
    return init;
  }
  std::uint64_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<std::optional<T>> partial(chunks);
  std::atomic<std::uint64_t> next_chunk{0};
  auto worker = [&] {
    for (;;) {
      std::uint64_t c = next_chunk.fetch_add(1);
      if (c >= chunks) return;
      std::uint64_t begin = c * kChunk, end = std::min(count, begin + kChunk);
      std::optional<T> acc;
      for (std::uint64_t i = begin; i < end; ++i)
        acc = acc ? combine(std::move(*acc), map(i)) : T(map(i));
      partial[c] = std::move(acc);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& p : partial)
    if (p) init = combine(std::move(init), std::move(*p));
  return init;
}

}  // namespace parallel
}  // namespace seplab
