#pragma once

#include <cstdint>
#include <vector>

#include "seplab/game_core.hpp"

namespace testing_support {

// splitmix64; enough for property tests and stable across platforms
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  int uniform(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return next() & 1; }

 private:
  std::uint64_t state_;
};

inline seplab::PriorityWord random_word(Rng& rng, int n, int d, int length) {
  seplab::PriorityWord w;
  for (int i = 0; i < length; ++i) w.push_back({rng.uniform(1, n), rng.uniform(1, d)});
  return w;
}

inline seplab::GameGraph random_graph(Rng& rng, int n, int d) {
  seplab::GameGraph g(n, d);
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v)
      if (rng.uniform(0, 2) == 0) g.set_edge(u, v, rng.uniform(1, d));
    if (!g.has_out_edge(u)) g.set_edge(u, rng.uniform(1, n), rng.uniform(1, d));
  }
  return g;
}

}  // namespace testing_support
