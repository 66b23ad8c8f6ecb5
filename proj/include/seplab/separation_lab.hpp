#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <vector>

#include "seplab/common.hpp"
#include "seplab/game_core.hpp"
#include "seplab/parallel.hpp"
#include "seplab/safety_automata.hpp"

namespace seplab {

enum class FailureReason : std::uint8_t { OddAccepted, EvenNotAcceptedByT, EvenNeverAccepted };

inline std::string_view to_string(FailureReason r) {
  switch (r) {
    case FailureReason::OddAccepted: return "OddAccepted";
    case FailureReason::EvenNotAcceptedByT: return "EvenNotAcceptedByT";
    default: return "EvenNeverAccepted";
  }
}

/// A graph together with a walk in it that the automaton handles wrongly.
/// For EvenNeverAccepted the walk is a lasso: word[loop_start..] repeats
/// forever, closing back onto word[loop_start].
struct Counterexample {
  GameGraph graph;
  PriorityWord word;
  FailureReason reason;
  std::optional<std::size_t> loop_start;
};

struct Verdict {
  bool ok = true;
  std::optional<Counterexample> counterexample;
};

struct VerifyOptions {
  /// Restrict play starts to a single node instead of all of [n].
  std::optional<int> start_node;
  int jobs = 1;
  Caps caps;
};

/// Thrown by operations that require a separator when the automaton is not one.
class NotASeparator : public PreconditionError {
 public:
  NotASeparator(const std::string& what, Counterexample cex) : PreconditionError(what), counterexample(std::move(cex)) {}
  Counterexample counterexample;
};

/// All well-formed graphs on exactly n nodes with their classification,
/// computed once per (n, d) and shared. Graphs on fewer nodes need not be
/// listed: padding them with loops of the right parity yields a graph on
/// [n] with the same parity that contains all of their walks.
class GraphCatalog {
 public:
  static const GraphCatalog& get(int n, int d, const Caps& caps = {}) {
    GameGraphEnumeration probe(n, d, caps);  // enforces caps
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<GraphCatalog>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{n, d}];
    if (!slot) slot.reset(new GraphCatalog(probe));
    return *slot;
  }

  std::uint64_t size() const { return enumeration_.size(); }
  int n() const { return enumeration_.n(); }
  int d() const { return enumeration_.d(); }

  /// Calls fn(graph, parity) for entry i.
  template <typename Fn>
  decltype(auto) visit(std::uint64_t i, Fn&& fn) const {
    if (cached_) return fn(graphs_[i], parities_[i]);
    GameGraph g = enumeration_.at(i);
    return fn(g, classify_graph(g));
  }

 private:
  static constexpr std::uint64_t kCacheLimit = 1u << 20;

  explicit GraphCatalog(GameGraphEnumeration e) : enumeration_(e), cached_(e.size() <= kCacheLimit) {
    if (!cached_) return;
    graphs_.reserve(e.size());
    parities_.reserve(e.size());
    for (std::uint64_t i = 0; i < e.size(); ++i) {
      graphs_.push_back(e.at(i));
      parities_.push_back(classify_graph(graphs_.back()));
    }
  }

  GameGraphEnumeration enumeration_;
  bool cached_;
  std::vector<GameGraph> graphs_;
  std::vector<GraphParity> parities_;
};

namespace detail {

/// Dense view of the product used by the per-graph checks: vertex
/// (v, q) has id (v-1)*states + q.
struct ProductView {
  const SafetyAutomaton& a;
  const GameGraph& g;

  int states() const { return a.states(); }
  int vertex_count() const { return g.n() * a.states(); }
  int id(int v, int q) const { return (v - 1) * a.states() + q; }
  int node(int id) const { return id / a.states() + 1; }
  int state(int id) const { return id % a.states(); }
  bool accepting(int id) const { return state(id) == a.accept(); }

  template <typename Fn>
  void for_each_arc(int from, Fn&& fn) const {
    int u = node(from), q = state(from);
    for (int v = 1; v <= g.n(); ++v) {
      int p = g.priority(u, v);
      if (p == 0) continue;
      Letter l{u, p};
      fn(id(v, a.step(q, l)), l);
    }
  }

  std::vector<int> starts(std::optional<int> start_node) const {
    std::vector<int> out;
    for (int v = 1; v <= g.n(); ++v)
      if (!start_node || *start_node == v) out.push_back(id(v, a.start()));
    return out;
  }
};

inline PriorityWord letters_between(const ProductView& pv, const std::vector<int>& path) {
  PriorityWord w;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    int u = pv.node(path[i]);
    w.push_back({u, pv.g.priority(u, pv.node(path[i + 1]))});
  }
  return w;
}

/// Shortest walk from a start vertex into the accepting state, if any.
inline std::optional<PriorityWord> odd_violation(const ProductView& pv, std::optional<int> start_node) {
  std::vector<int> parent(pv.vertex_count(), -2);
  std::deque<int> queue;
  for (int s : pv.starts(start_node)) {
    if (parent[s] != -2) continue;
    parent[s] = -1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    if (pv.accepting(cur)) {
      std::vector<int> path;
      for (int v = cur; v >= 0; v = parent[v]) path.push_back(v);
      std::reverse(path.begin(), path.end());
      return letters_between(pv, path);
    }
    pv.for_each_arc(cur, [&](int next, Letter) {
      if (parent[next] == -2) {
        parent[next] = cur;
        queue.push_back(next);
      }
    });
  }
  return std::nullopt;
}

/// A walk of exactly t letters after which the automaton is still outside
/// the accepting state, if any. Only non-accepting vertices are tracked:
/// with an absorbing accept state they are exactly the relevant ones.
inline std::optional<PriorityWord> time_violation(const ProductView& pv, int t, std::optional<int> start_node) {
  std::vector<std::vector<int>> parent(1, std::vector<int>(pv.vertex_count(), -2));
  std::vector<int> layer;
  for (int s : pv.starts(start_node))
    if (!pv.accepting(s) && parent[0][s] == -2) {
      parent[0][s] = -1;
      layer.push_back(s);
    }
  for (int depth = 0; depth < t && !layer.empty(); ++depth) {
    std::vector<int> next_layer;
    parent.emplace_back(pv.vertex_count(), -2);
    for (int cur : layer)
      pv.for_each_arc(cur, [&](int next, Letter) {
        if (pv.accepting(next) || parent[depth + 1][next] != -2) return;
        parent[depth + 1][next] = cur;
        next_layer.push_back(next);
      });
    std::sort(next_layer.begin(), next_layer.end());
    layer = std::move(next_layer);
  }
  if (layer.empty()) return std::nullopt;
  std::vector<int> path{layer.front()};
  for (int depth = t; depth > 0; --depth) path.push_back(parent[depth][path.back()]);
  std::reverse(path.begin(), path.end());
  // path has t+1 vertices; the last letter leaves path[t-1] towards path[t].
  return letters_between(pv, path);
}

/// A reachable cycle avoiding the accepting state, as (word, loop_start).
inline std::optional<std::pair<PriorityWord, std::size_t>> never_accept_violation(const ProductView& pv,
                                                                                  std::optional<int> start_node) {
  enum Color : std::uint8_t { White, Grey, Black };
  std::vector<Color> color(pv.vertex_count(), White);
  std::vector<int> stack;
  std::optional<std::pair<std::vector<int>, std::size_t>> found;
  std::function<void(int)> dfs = [&](int u) {
    color[u] = Grey;
    stack.push_back(u);
    pv.for_each_arc(u, [&](int next, Letter) {
      if (found || pv.accepting(next)) return;
      if (color[next] == Grey) {
        auto pos = std::find(stack.begin(), stack.end(), next) - stack.begin();
        std::vector<int> path(stack);
        path.push_back(next);
        found.emplace(std::move(path), static_cast<std::size_t>(pos));
      } else if (color[next] == White) {
        dfs(next);
      }
    });
    stack.pop_back();
    color[u] = Black;
  };
  for (int s : pv.starts(start_node)) {
    if (found) break;
    if (!pv.accepting(s) && color[s] == White) dfs(s);
  }
  if (!found) return std::nullopt;
  return std::make_pair(letters_between(pv, found->first), found->second);
}

/// Longest walk (in letters) that keeps the automaton outside accept;
/// -1 when every start vertex already accepts. Requires acyclicity.
inline int longest_rejecting_walk(const ProductView& pv, std::optional<int> start_node) {
  std::vector<int> memo(pv.vertex_count(), -2);
  std::function<int(int)> longest = [&](int u) -> int {
    if (memo[u] != -2) return memo[u];
    int best = 0;
    pv.for_each_arc(u, [&](int next, Letter) {
      if (!pv.accepting(next)) best = std::max(best, 1 + longest(next));
    });
    return memo[u] = best;
  };
  int best = -1;
  for (int s : pv.starts(start_node))
    if (!pv.accepting(s)) best = std::max(best, longest(s));
  return best;
}

inline void check_verify_inputs(const SafetyAutomaton& a, int n, int d) {
  if (!a.is_absorbing()) throw PreconditionError("automaton accept state must be absorbing");
  if (n < 1 || d < 1) throw std::invalid_argument("need n >= 1 and d >= 1");
  if (n > a.n() || d > a.d())
    throw std::invalid_argument(detail::concat("verification alphabet [", n, "]x[", d,
                                               "] exceeds automaton alphabet [", a.n(), "]x[", a.d(), "]"));
}

template <typename Check>
Verdict first_violation(const SafetyAutomaton& a, int n, int d, const VerifyOptions& opts, Check check) {
  check_verify_inputs(a, n, d);
  const auto& catalog = GraphCatalog::get(n, d, opts.caps);
  auto hit = parallel::first_match(catalog.size(), opts.jobs, [&](std::uint64_t i) {
    return catalog.visit(i, [&](const GameGraph& g, GraphParity parity) { return check(g, parity); });
  });
  if (!hit) return {};
  return {false, std::move(hit->second)};
}

}  // namespace detail

/// Separation in time t: odd graphs never let the automaton reach accept,
/// and on even graphs every walk of t letters ends in accept. The reported
/// counterexample is the one on the first violating graph in enumeration
/// order, independent of the worker count.
inline Verdict verify_time_t(const SafetyAutomaton& a, int n, int d, int t, const VerifyOptions& opts = {}) {
  if (t < 0) throw std::invalid_argument("time bound must be >= 0");
  return detail::first_violation(a, n, d, opts, [&](const GameGraph& g, GraphParity parity) -> std::optional<Counterexample> {
    detail::ProductView pv{a, g};
    if (parity == GraphParity::Odd) {
      if (auto w = detail::odd_violation(pv, opts.start_node))
        return Counterexample{g, std::move(*w), FailureReason::OddAccepted, std::nullopt};
    } else if (parity == GraphParity::Even) {
      if (auto w = detail::time_violation(pv, t, opts.start_node))
        return Counterexample{g, std::move(*w), FailureReason::EvenNotAcceptedByT, std::nullopt};
    }
    return std::nullopt;
  });
}

/// Unrestricted separation: odd graphs never reach accept, and on even
/// graphs no infinite walk avoids accept (the reachable rejecting part of
/// the product is acyclic).
inline Verdict verify_unrestricted(const SafetyAutomaton& a, int n, int d, const VerifyOptions& opts = {}) {
  return detail::first_violation(a, n, d, opts, [&](const GameGraph& g, GraphParity parity) -> std::optional<Counterexample> {
    detail::ProductView pv{a, g};
    if (parity == GraphParity::Odd) {
      if (auto w = detail::odd_violation(pv, opts.start_node))
        return Counterexample{g, std::move(*w), FailureReason::OddAccepted, std::nullopt};
    } else if (parity == GraphParity::Even) {
      if (auto lasso = detail::never_accept_violation(pv, opts.start_node))
        return Counterexample{g, std::move(lasso->first), FailureReason::EvenNeverAccepted, lasso->second};
    }
    return std::nullopt;
  });
}

/// Smallest t for which verify_time_t succeeds: one more than the longest
/// rejecting walk over all even graphs. At most |Q|*n for any separator.
inline int derive_time_bound(const SafetyAutomaton& a, int n, int d, const VerifyOptions& opts = {}) {
  auto verdict = verify_unrestricted(a, n, d, opts);
  if (!verdict.ok) throw NotASeparator("automaton does not separate; no time bound exists", *verdict.counterexample);
  const auto& catalog = GraphCatalog::get(n, d, opts.caps);
  int longest = parallel::reduce(
      catalog.size(), opts.jobs, -1,
      [&](std::uint64_t i) {
        return catalog.visit(i, [&](const GameGraph& g, GraphParity parity) {
          if (parity != GraphParity::Even) return -1;
          return detail::longest_rejecting_walk(detail::ProductView{a, g}, opts.start_node);
        });
      },
      [](int x, int y) { return std::max(x, y); });
  return longest + 1;
}

/// Re-checks a counterexample independently of how it was found. For
/// EvenNotAcceptedByT, `t` is the time bound being refuted.
inline bool confirm_counterexample(const SafetyAutomaton& a, const Counterexample& cex, std::optional<int> t = std::nullopt) {
  if (!is_walk(cex.graph, cex.word)) return false;
  auto parity = classify_graph(cex.graph);
  switch (cex.reason) {
    case FailureReason::OddAccepted:
      return parity == GraphParity::Odd && delta_star(a, a.start(), cex.word) == a.accept();
    case FailureReason::EvenNotAcceptedByT:
      return parity == GraphParity::Even && (!t || static_cast<int>(cex.word.size()) >= *t) &&
             delta_star(a, a.start(), cex.word) != a.accept();
    case FailureReason::EvenNeverAccepted: {
      if (parity != GraphParity::Even || !cex.loop_start || *cex.loop_start >= cex.word.size()) return false;
      // The loop must close: its last letter leads back to the loop entry.
      const auto& last = cex.word.back();
      if (cex.graph.priority(last.node, cex.word[*cex.loop_start].node) != last.priority) return false;
      int q = a.start();
      if (q == a.accept()) return false;
      for (const auto& l : cex.word) {
        q = a.step(q, l);
        if (q == a.accept()) return false;
      }
      PriorityWord stem(cex.word.begin(), cex.word.begin() + static_cast<std::ptrdiff_t>(*cex.loop_start));
      return delta_star(a, a.start(), stem) == q;
    }
  }
  return false;
}

/// Builds a concrete failure for an automaton with at most n states over
/// [n] x {1,2}: the states reached on (1,2)(2,2)...(i,2), i < n, either hit
/// accept (the chain 1 -> 2 -> ... -> n with a priority-1 loop at n is odd)
/// or repeat, and then the complete priority-2 graph carries a cycle on
/// which the automaton never accepts.
inline Counterexample refute_small_separator(const SafetyAutomaton& a, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (a.d() != 2) throw PreconditionError("refutation needs d = 2");
  if (a.n() < n) throw PreconditionError("automaton alphabet smaller than n");
  if (a.states() > n) throw PreconditionError(detail::concat("automaton has ", a.states(), " > n = ", n, " states"));
  std::vector<int> q{a.start()};
  for (int i = 1; i < n; ++i) q.push_back(a.step(q.back(), {i, 2}));
  for (int i = 0; i < n; ++i) {
    if (q[i] != a.accept()) continue;
    GameGraph chain(n, 2);
    for (int v = 1; v < n; ++v) chain.set_edge(v, v + 1, 2);
    chain.set_edge(n, n, 1);
    PriorityWord w;
    for (int v = 1; v <= i; ++v) w.push_back({v, 2});
    return {chain, w, FailureReason::OddAccepted, std::nullopt};
  }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (q[i] != q[j]) continue;
      GameGraph complete(n, 2);
      for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v) complete.set_edge(u, v, 2);
      PriorityWord w;
      for (int v = 1; v <= j; ++v) w.push_back({v, 2});
      return {complete, w, FailureReason::EvenNeverAccepted, static_cast<std::size_t>(i)};
    }
  // n values drawn from at most n-1 rejecting states always collide.
  throw std::logic_error("pigeonhole failed; automaton state count inconsistent");
}

/// A reachability game: vertex v is moved from by owner[v].
struct ReachabilityGame {
  std::vector<std::vector<int>> successors;
  std::vector<Player> owner;

  int size() const { return static_cast<int>(successors.size()); }
};

/// Vertices from which `player` can force a visit to `targets`.
inline std::vector<bool> attractor(const ReachabilityGame& game, const std::vector<bool>& targets,
                                   Player player = Player::Even) {
  const int n = game.size();
  std::vector<std::vector<int>> preds(n);
  std::vector<int> remaining(n);
  for (int v = 0; v < n; ++v) {
    if (game.successors[v].empty()) throw ValidationError("attractor needs every vertex to have a successor");
    remaining[v] = static_cast<int>(game.successors[v].size());
    for (int w : game.successors[v]) preds[w].push_back(v);
  }
  std::vector<bool> in(n, false);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v)
    if (targets[v]) {
      in[v] = true;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    for (int v : preds[w]) {
      if (in[v]) continue;
      if (game.owner[v] == player || --remaining[v] == 0) {
        in[v] = true;
        queue.push_back(v);
      }
    }
  }
  return in;
}

/// Parity game instance: the graph's priorities sit on edges.
struct ParityArena {
  GameGraph graph;
  std::vector<Player> owner;  // indexed by node - 1
  int initial = 1;

  int n() const { return graph.n(); }

  void validate() const {
    graph.validate();
    if (static_cast<int>(owner.size()) != graph.n()) throw ValidationError("owner must cover every node");
    if (!graph.contains_node(initial)) throw ValidationError("initial node outside the graph");
  }
};

/// Winner via the reachability game on arena x automaton, accepting
/// product vertices being Player 0's targets. Unless `trust` is set, the
/// automaton is first verified as a separator at the arena's (n, d).
inline Player solve_parity_via_separator(const ParityArena& arena, const SafetyAutomaton& a, bool trust = false,
                                         const VerifyOptions& opts = {}) {
  arena.validate();
  check_compatible(a, arena.graph);
  if (!trust) {
    auto verdict = verify_unrestricted(a, arena.n(), arena.graph.d(), opts);
    if (!verdict.ok)
      throw NotASeparator("automaton is not a separator at the arena's size (pass trust to skip)", *verdict.counterexample);
  }
  const int states = a.states();
  ReachabilityGame game;
  game.successors.resize(static_cast<std::size_t>(arena.n()) * states);
  game.owner.resize(game.successors.size());
  std::vector<bool> targets(game.successors.size(), false);
  for (int u = 1; u <= arena.n(); ++u)
    for (int q = 0; q < states; ++q) {
      int id = (u - 1) * states + q;
      game.owner[id] = arena.owner[u - 1];
      targets[id] = q == a.accept();
      for (int v = 1; v <= arena.n(); ++v)
        if (int p = arena.graph.priority(u, v)) game.successors[id].push_back((v - 1) * states + a.step(q, {u, p}));
    }
  auto win = attractor(game, targets, Player::Even);
  return win[(arena.initial - 1) * states + a.start()] ? Player::Even : Player::Odd;
}

struct DirectSolution {
  Player winner;
  /// Player 0's first winning memoryless strategy in enumeration order:
  /// chosen successor per node (0 for Player 1 nodes).
  std::optional<std::vector<int>> strategy;
};

/// Brute force over Player 0's memoryless strategies. A strategy wins iff
/// every cycle reachable from the initial node in the strategy-restricted
/// graph has an even maximum priority. Strategies are enumerated with
/// node 1's choice most significant and successors in increasing order.
inline DirectSolution solve_parity_direct(const ParityArena& arena, const Caps& caps = {}) {
  arena.validate();
  const int n = arena.n();
  if (n > caps.max_nodes) detail::refuse(detail::concat("direct solver with n=", n, " exceeds node cap ", caps.max_nodes));
  std::vector<std::vector<int>> choices(n);
  for (int u = 1; u <= n; ++u)
    choices[u - 1] = arena.owner[u - 1] == Player::Even ? arena.graph.successors(u) : std::vector<int>{0};
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    GameGraph restricted(n, arena.graph.d());
    for (int u = 1; u <= n; ++u) {
      int chosen = choices[u - 1][pick[u - 1]];
      for (int v : arena.graph.successors(u))
        if (chosen == 0 || chosen == v) restricted.set_edge(u, v, arena.graph.priority(u, v));
    }
    std::vector<bool> reach(n, false);
    std::vector<int> stack{arena.initial};
    reach[arena.initial - 1] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : restricted.successors(u))
        if (!reach[v - 1]) {
          reach[v - 1] = true;
          stack.push_back(v);
        }
    }
    if (!detail::cycle_parities(restricted, reach).second) {
      std::vector<int> strategy(n);
      for (int u = 0; u < n; ++u) strategy[u] = choices[u][pick[u]];
      return {Player::Even, strategy};
    }
    int pos = n - 1;
    while (pos >= 0 && ++pick[pos] == choices[pos].size()) pick[pos--] = 0;
    if (pos < 0) return {Player::Odd, std::nullopt};
  }
}

}  // namespace seplab
