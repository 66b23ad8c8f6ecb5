#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "seplab/common.hpp"

namespace seplab {

/// One input symbol (node, priority). Nodes and priorities are 1-based.
struct Letter {
  int node = 1;
  int priority = 1;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using PriorityWord = std::vector<Letter>;

struct Edge {
  int from;
  int to;
  int priority;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class GraphParity : std::uint8_t { Even, Odd, Neither };

inline std::string_view to_string(GraphParity p) {
  switch (p) {
    case GraphParity::Even: return "Even";
    case GraphParity::Odd: return "Odd";
    default: return "Neither";
  }
}

/// Directed graph on nodes 1..n with at most one priority in 1..d per
/// ordered pair. Loops are allowed, parallel edges are not. A well-formed
/// graph gives every node at least one out-edge.
class GameGraph {
 public:
  GameGraph() = default;
  GameGraph(int n, int d) : n_(n), d_(d), cell_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 1 || d < 1) throw ValidationError("game graph needs n >= 1 and d >= 1");
    if (d > 255) throw ValidationError("at most 255 priorities are supported");
  }

  static GameGraph from_edges(int n, int d, const std::vector<Edge>& edges) {
    GameGraph g(n, d);
    for (const auto& e : edges) {
      if (g.priority(e.from, e.to) != 0)
        throw ValidationError(detail::concat("parallel edge ", e.from, "->", e.to));
      g.set_edge(e.from, e.to, e.priority);
    }
    g.validate();
    return g;
  }

  int n() const { return n_; }
  int d() const { return d_; }

  /// Priority of edge (u,v), or 0 when absent.
  int priority(int u, int v) const { return cell_[index(u, v)]; }
  bool has_edge(int u, int v) const { return priority(u, v) != 0; }

  /// Sets the priority of (u,v); priority 0 removes the edge.
  void set_edge(int u, int v, int p) {
    if (p < 0 || p > d_) throw std::out_of_range(detail::concat("priority ", p, " outside [1,", d_, "]"));
    cell_[index(u, v)] = static_cast<std::uint8_t>(p);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v)
        if (int p = priority(u, v)) out.push_back({u, v, p});
    return out;
  }

  std::vector<int> successors(int u) const {
    std::vector<int> out;
    for (int v = 1; v <= n_; ++v)
      if (has_edge(u, v)) out.push_back(v);
    return out;
  }

  bool has_out_edge(int u) const {
    for (int v = 1; v <= n_; ++v)
      if (has_edge(u, v)) return true;
    return false;
  }

  bool has_out_edge_with_priority(int u, int p) const {
    for (int v = 1; v <= n_; ++v)
      if (priority(u, v) == p) return true;
    return false;
  }

  bool well_formed() const {
    for (int u = 1; u <= n_; ++u)
      if (!has_out_edge(u)) return false;
    return true;
  }

  void validate() const {
    for (int u = 1; u <= n_; ++u)
      if (!has_out_edge(u)) throw ValidationError(detail::concat("node ", u, " has no outgoing edge"));
  }

  bool contains_node(int v) const { return v >= 1 && v <= n_; }

  friend bool operator==(const GameGraph&, const GameGraph&) = default;

 private:
  std::size_t index(int u, int v) const {
    if (!contains_node(u) || !contains_node(v))
      throw std::out_of_range(detail::concat("edge ", u, "->", v, " outside [1,", n_, "]"));
    return static_cast<std::size_t>(u - 1) * n_ + (v - 1);
  }

  int n_ = 0;
  int d_ = 0;
  std::vector<std::uint8_t> cell_;
};

namespace detail {

/// Tarjan SCC ids over the edges accepted by `keep`; nodes are 1-based,
/// the returned vector is indexed by node - 1.
template <typename Keep>
std::vector<int> scc_ids(const GameGraph& g, Keep keep) {
  const int n = g.n();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  int counter = 0, comps = 0;
  std::function<void(int)> visit = [&](int u) {
    index[u] = low[u] = counter++;
    stack.push_back(u);
    on_stack[u] = true;
    for (int v = 0; v < n; ++v) {
      int p = g.priority(u + 1, v + 1);
      if (p == 0 || !keep(p)) continue;
      if (index[v] < 0) {
        visit(v);
        low[u] = std::min(low[u], low[v]);
      } else if (on_stack[v]) {
        low[u] = std::min(low[u], index[v]);
      }
    }
    if (low[u] == index[u]) {
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
      } while (w != u);
      ++comps;
    }
  };
  for (int u = 0; u < n; ++u)
    if (index[u] < 0) visit(u);
  return comp;
}

/// Which cycle-maximum parities occur in g, restricted to nodes in `alive`
/// (1-based mask; empty means all). An edge of priority p closes a cycle
/// whose maximum is p iff its endpoints share an SCC of the <= p subgraph.
inline std::pair<bool, bool> cycle_parities(const GameGraph& g, const std::vector<bool>& alive = {}) {
  bool even = false, odd = false;
  auto live = [&](int v) { return alive.empty() || alive[v - 1]; };
  for (int p = 1; p <= g.d(); ++p) {
    bool present = false;
    for (const auto& e : g.edges())
      if (e.priority == p && live(e.from) && live(e.to)) present = true;
    if (!present) continue;
    auto comp = scc_ids(g, [p](int q) { return q <= p; });
    for (const auto& e : g.edges()) {
      if (e.priority != p || !live(e.from) || !live(e.to)) continue;
      if (comp[e.from - 1] == comp[e.to - 1]) (p % 2 == 0 ? even : odd) = true;
    }
  }
  return {even, odd};
}

}  // namespace detail

/// Even iff every cycle has an even maximum priority, Odd iff every cycle
/// has an odd maximum, Neither otherwise. Needs no cycle enumeration.
inline GraphParity classify_graph(const GameGraph& g) {
  g.validate();
  auto [even, odd] = detail::cycle_parities(g);
  if (even && odd) return GraphParity::Neither;
  return even ? GraphParity::Even : GraphParity::Odd;
}

/// Number of well-formed graphs on exactly n nodes: ((d+1)^n - 1)^n.
inline std::uint64_t game_graph_count(int n, int d) {
  std::uint64_t rows = detail::checked_pow(static_cast<std::uint64_t>(d) + 1, n) - 1;
  return detail::checked_pow(rows, n);
}

/// Exhaustive, index-addressable enumeration of well-formed game graphs.
///
/// Order: lexicographic over the row-major edge matrix with cell values
/// 0 (absent), 1..d, cell (1,1) most significant; matrices containing an
/// all-absent row are skipped. Index i therefore decodes as mixed radix
/// over rows, each digit being a non-zero base-(d+1) row pattern minus one.
class GameGraphEnumeration {
 public:
  GameGraphEnumeration(int n, int d, const Caps& caps = {}) : n_(n), d_(d) {
    if (n < 1 || d < 1) throw ValidationError("enumeration needs n >= 1 and d >= 1");
    if (n > caps.max_nodes)
      detail::refuse(detail::concat("graph enumeration with n=", n, " exceeds node cap ", caps.max_nodes));
    if (d > caps.max_priorities)
      detail::refuse(detail::concat("graph enumeration with d=", d, " exceeds priority cap ", caps.max_priorities));
    row_patterns_ = detail::checked_pow(static_cast<std::uint64_t>(d) + 1, n) - 1;
    count_ = game_graph_count(n, d);
  }

  std::uint64_t size() const { return count_; }
  int n() const { return n_; }
  int d() const { return d_; }

  GameGraph at(std::uint64_t index) const {
    if (index >= count_) throw std::out_of_range("graph index out of range");
    GameGraph g(n_, d_);
    for (int u = n_; u >= 1; --u) {
      std::uint64_t pattern = index % row_patterns_ + 1;
      index /= row_patterns_;
      for (int v = n_; v >= 1; --v) {
        g.set_edge(u, v, static_cast<int>(pattern % (d_ + 1)));
        pattern /= (d_ + 1);
      }
    }
    return g;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t i = 0; i < count_; ++i) fn(at(i));
  }

 private:
  int n_, d_;
  std::uint64_t row_patterns_ = 0, count_ = 0;
};

inline GameGraphEnumeration enumerate_game_graphs(int n, int d, const Caps& caps = {}) {
  return GameGraphEnumeration(n, d, caps);
}

/// (x,1) letters for the members of X in increasing order.
inline PriorityWord encode_set_word(const std::vector<int>& set) {
  std::vector<int> sorted(set);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  PriorityWord w;
  w.reserve(sorted.size());
  for (int x : sorted) w.push_back({x, 1});
  return w;
}

inline std::set<int> nodes_of_word(const PriorityWord& w) {
  std::set<int> out;
  for (const auto& l : w) out.insert(l.node);
  return out;
}

/// The separator letter #_r = (n' + r, 2). Throws when it leaves [n].
inline Letter hash_letter(int n_prime, int r, int n_bound) {
  if (r < 1) throw std::out_of_range("hash letter index must be >= 1");
  if (n_prime + r > n_bound)
    throw std::out_of_range(detail::concat("hash letter node ", n_prime + r, " exceeds n=", n_bound));
  return {n_prime + r, 2};
}

inline PriorityWord concat_words(const PriorityWord& a, const PriorityWord& b) {
  PriorityWord out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// Each consecutive pair of letters must follow an edge carrying the first
/// letter's priority, and the final letter needs some out-edge of its own
/// priority (its target is left open).
inline bool is_walk(const GameGraph& g, const PriorityWord& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& l = w[i];
    if (!g.contains_node(l.node) || l.priority < 1 || l.priority > g.d()) return false;
    if (i + 1 < w.size()) {
      int next = w[i + 1].node;
      if (!g.contains_node(next) || g.priority(l.node, next) != l.priority) return false;
    } else if (!g.has_out_edge_with_priority(l.node, l.priority)) {
      return false;
    }
  }
  return true;
}

namespace detail {

inline bool parity_ok(const GameGraph& g, const std::vector<bool>& alive, GraphParity want) {
  auto [even, odd] = cycle_parities(g, alive);
  return want == GraphParity::Even ? !odd : !even;
}

}  // namespace detail

/// Whether w labels a walk prefix in some game graph on at most n nodes
/// whose every cycle has the requested parity of maximum priority.
///
/// Graphs on fewer nodes embed into graphs on exactly n nodes by giving
/// each extra node a loop of the requested parity, so the search runs over
/// completions on [n] of the edges forced by w. Adding edges never removes
/// a cycle, so each node still lacking an out-edge receives exactly one.
inline bool is_cycles_prefix(const PriorityWord& w, int n, int d, GraphParity parity, const Caps& caps = {}) {
  if (parity == GraphParity::Neither) throw std::invalid_argument("parity must be Even or Odd");
  if (n > caps.max_prefix_nodes)
    detail::refuse(detail::concat("prefix search with n=", n, " exceeds cap ", caps.max_prefix_nodes));
  const int loop_priority = parity == GraphParity::Even ? 2 : 1;
  if (loop_priority > d) return false;  // d = 1 admits no even graph at all
  for (const auto& l : w)
    if (l.node < 1 || l.node > n || l.priority < 1 || l.priority > d) return false;

  GameGraph g(n, d);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < w.size(); ++i) {
    used[w[i].node - 1] = true;
    if (i + 1 == w.size()) break;
    int u = w[i].node, v = w[i + 1].node, p = w[i].priority;
    if (g.priority(u, v) != 0 && g.priority(u, v) != p) return false;
    g.set_edge(u, v, p);
    used[v - 1] = true;
  }

  // A spare node carrying a good loop absorbs every missing out-edge
  // (including the open final edge) without closing new cycles.
  int spare = 0;
  for (int v = n; v >= 1; --v)
    if (!used[v - 1]) spare = v;
  if (spare != 0) {
    std::vector<bool> alive(used);
    return detail::parity_ok(g, alive, parity);
  }

  // All n nodes are in use: choose the open final edge, then one out-edge
  // per node still lacking one.
  std::vector<GameGraph> starts;
  if (w.empty()) {
    starts.push_back(g);
  } else {
    const auto& last = w.back();
    if (g.has_out_edge_with_priority(last.node, last.priority)) {
      starts.push_back(g);
    } else {
      for (int v = 1; v <= n; ++v) {
        if (g.has_edge(last.node, v)) continue;
        GameGraph h(g);
        h.set_edge(last.node, v, last.priority);
        starts.push_back(std::move(h));
      }
    }
  }
  std::function<bool(GameGraph&, int)> complete = [&](GameGraph& h, int u) -> bool {
    if (u > n) return detail::parity_ok(h, {}, parity);
    if (h.has_out_edge(u)) return complete(h, u + 1);
    for (int v = 1; v <= n; ++v)
      for (int p = 1; p <= d; ++p) {
        h.set_edge(u, v, p);
        // Prune as soon as the partial graph already has a bad cycle.
        if (detail::parity_ok(h, {}, parity) && complete(h, u + 1)) return true;
        h.set_edge(u, v, 0);
      }
    return false;
  };
  for (auto& h : starts)
    if (detail::parity_ok(h, {}, parity) && complete(h, 1)) return true;
  return false;
}

}  // namespace seplab
