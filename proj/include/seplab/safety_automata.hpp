#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "seplab/common.hpp"
#include "seplab/game_core.hpp"

namespace seplab {

/// Deterministic automaton over the alphabet [n] x [d] with a distinguished
/// accepting state. States are 0-based. Factories and loaders return
/// automata whose accepting state is absorbing; the raw constructor does
/// not, so that make_absorbing has something to normalize.
class SafetyAutomaton {
 public:
  SafetyAutomaton() = default;

  /// Every transition starts as a self-loop.
  SafetyAutomaton(int n, int d, int states, int start, int accept)
      : n_(n), d_(d), states_(states), start_(start), accept_(accept) {
    if (n < 1 || d < 1) throw ValidationError("automaton alphabet needs n >= 1 and d >= 1");
    if (states < 1) throw ValidationError("automaton needs at least one state");
    check_state(start);
    check_state(accept);
    delta_.resize(static_cast<std::size_t>(states) * alphabet_size());
    for (int q = 0; q < states; ++q)
      for (int a = 0; a < alphabet_size(); ++a) delta_[slot(q, a)] = q;
  }

  int n() const { return n_; }
  int d() const { return d_; }
  int states() const { return states_; }
  int start() const { return start_; }
  int accept() const { return accept_; }
  int alphabet_size() const { return n_ * d_; }

  int letter_index(Letter l) const {
    if (l.node < 1 || l.node > n_ || l.priority < 1 || l.priority > d_)
      throw std::out_of_range(detail::concat("letter (", l.node, ",", l.priority, ") outside [", n_, "]x[", d_, "]"));
    return (l.node - 1) * d_ + (l.priority - 1);
  }
  Letter letter_at(int index) const { return {index / d_ + 1, index % d_ + 1}; }

  int step(int q, Letter l) const { return delta_[slot(q, letter_index(l))]; }
  int step_index(int q, int letter) const { return delta_[slot(q, letter)]; }

  void set_transition(int q, Letter l, int target) {
    check_state(q);
    check_state(target);
    delta_[slot(q, letter_index(l))] = target;
  }
  void set_transition_index(int q, int letter, int target) { delta_[slot(q, letter)] = target; }

  bool is_absorbing() const {
    for (int a = 0; a < alphabet_size(); ++a)
      if (step_index(accept_, a) != accept_) return false;
    return true;
  }

  friend bool operator==(const SafetyAutomaton&, const SafetyAutomaton&) = default;

 private:
  void check_state(int q) const {
    if (q < 0 || q >= states_) throw std::out_of_range(detail::concat("state ", q, " outside [0,", states_, ")"));
  }
  std::size_t slot(int q, int a) const { return static_cast<std::size_t>(q) * alphabet_size() + a; }

  int n_ = 0, d_ = 0, states_ = 0, start_ = 0, accept_ = 0;
  std::vector<int> delta_;
};

/// Left fold of the transition function over w.
inline int delta_star(const SafetyAutomaton& a, int q, const PriorityWord& w) {
  for (const auto& l : w) q = a.step(q, l);
  return q;
}

inline SafetyAutomaton make_absorbing(SafetyAutomaton a) {
  for (int l = 0; l < a.alphabet_size(); ++l) a.set_transition_index(a.accept(), l, a.accept());
  return a;
}

/// Counts priority-2 letters and accepts once `threshold` of them were
/// read: states c_0..c_threshold, accept = c_threshold.
inline SafetyAutomaton counter_automaton(int n, int threshold) {
  if (n < 1 || threshold < 0) throw std::invalid_argument("counter automaton needs n >= 1, threshold >= 0");
  SafetyAutomaton a(n, 2, threshold + 1, 0, threshold);
  for (int c = 0; c < threshold; ++c)
    for (int v = 1; v <= n; ++v) {
      a.set_transition(c, {v, 1}, c);
      a.set_transition(c, {v, 2}, c + 1);
    }
  return a;
}

/// Accepts after n+1 letters of priority 2 (n+2 states).
inline SafetyAutomaton counter_separator(int n) { return counter_automaton(n, n + 1); }

/// Product of a game graph and an automaton, restricted to the part
/// reachable from {(v, start) : v in [n]}. Vertex (v, q) means "standing at
/// node v after the automaton reached q"; its arcs follow each edge (v, w)
/// reading the letter (v, priority(v, w)).
struct ProductGraph {
  struct Vertex {
    int node;
    int state;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
  };
  struct Arc {
    int target;  // index into vertices
    Letter letter;
  };

  std::vector<Vertex> vertices;
  std::vector<std::vector<Arc>> arcs;
  std::vector<int> depth;  // BFS distance from the start set
  std::vector<int> parent;  // BFS tree, -1 at start vertices

  std::optional<int> find(int node, int state) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].node == node && vertices[i].state == state) return static_cast<int>(i);
    return std::nullopt;
  }

  /// Letters along the BFS tree path from the start set to vertex v.
  PriorityWord word_to(int v) const {
    PriorityWord w;
    while (parent[v] >= 0) {
      int p = parent[v];
      w.push_back({vertices[p].node, 0});
      for (const auto& arc : arcs[p])
        if (arc.target == v) w.back() = arc.letter;
      v = p;
    }
    return {w.rbegin(), w.rend()};
  }
};

inline void check_compatible(const SafetyAutomaton& a, const GameGraph& g) {
  if (g.n() > a.n() || g.d() > a.d())
    throw std::invalid_argument(detail::concat("graph alphabet [", g.n(), "]x[", g.d(),
                                               "] not covered by automaton alphabet [", a.n(), "]x[", a.d(), "]"));
}

/// BFS over the product. `start_node` restricts the start set to one node.
inline ProductGraph product_reach(const SafetyAutomaton& a, const GameGraph& g,
                                  std::optional<int> start_node = std::nullopt) {
  check_compatible(a, g);
  ProductGraph pg;
  const int n = g.n();
  std::vector<int> id(static_cast<std::size_t>(n) * a.states(), -1);
  auto key = [&](int v, int q) { return static_cast<std::size_t>(v - 1) * a.states() + q; };
  std::deque<int> queue;
  auto add = [&](int v, int q, int depth, int parent) {
    auto& slot = id[key(v, q)];
    if (slot >= 0) return slot;
    slot = static_cast<int>(pg.vertices.size());
    pg.vertices.push_back({v, q});
    pg.arcs.emplace_back();
    pg.depth.push_back(depth);
    pg.parent.push_back(parent);
    queue.push_back(slot);
    return slot;
  };
  for (int v = 1; v <= n; ++v)
    if (!start_node || *start_node == v) add(v, a.start(), 0, -1);
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    auto [u, q] = pg.vertices[cur];
    for (int v = 1; v <= n; ++v) {
      int p = g.priority(u, v);
      if (p == 0) continue;
      Letter l{u, p};
      int target = add(v, a.step(q, l), pg.depth[cur] + 1, cur);
      pg.arcs[cur].push_back({target, l});
    }
  }
  return pg;
}

/// Canonical form: states renamed in BFS order from the start state
/// (letters scanned in index order), unreachable states dropped, and an
/// unreachable accepting state re-added as the last state.
inline SafetyAutomaton canonicalize(const SafetyAutomaton& a) {
  std::vector<int> rename(a.states(), -1);
  std::vector<int> order;
  rename[a.start()] = 0;
  order.push_back(a.start());
  for (std::size_t i = 0; i < order.size(); ++i) {
    int q = order[i];
    if (q == a.accept()) continue;
    for (int l = 0; l < a.alphabet_size(); ++l) {
      int t = a.step_index(q, l);
      if (rename[t] < 0) {
        rename[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }
  bool accept_reached = rename[a.accept()] >= 0;
  int states = static_cast<int>(order.size()) + (accept_reached ? 0 : 1);
  int accept = accept_reached ? rename[a.accept()] : states - 1;
  SafetyAutomaton c(a.n(), a.d(), states, 0, accept);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    if (order[i] == a.accept()) continue;
    for (int l = 0; l < a.alphabet_size(); ++l) c.set_transition_index(i, l, rename[a.step_index(order[i], l)]);
  }
  return c;
}

/// Every canonical absorbing-accept automaton with at most q_max states.
///
/// Canonical automata are generated directly: the transition table is
/// scanned row by row (state-major, letter-minor) and each newly reached
/// state must receive the next unused id, which is exactly BFS numbering.
/// Order: number of reachable states ascending; accept id ascending, with
/// "accept unreachable" last; then tables lexicographically.
inline std::vector<SafetyAutomaton> enumerate_automata(int n, int d, int q_max, const Caps& caps = {}) {
  if (q_max < 1) throw std::invalid_argument("q_max must be >= 1");
  if (q_max > caps.max_automaton_states)
    detail::refuse(detail::concat("automaton enumeration with q_max=", q_max, " exceeds cap ", caps.max_automaton_states));
  if (n * d > caps.max_alphabet)
    detail::refuse(detail::concat("automaton enumeration with alphabet ", n * d, " exceeds cap ", caps.max_alphabet));
  const int letters = n * d;
  std::vector<SafetyAutomaton> out;
  for (int reachable = 1; reachable <= q_max; ++reachable) {
    std::vector<int> accept_choices;
    if (reachable == 1) accept_choices.push_back(0);
    for (int acc = 1; acc < reachable; ++acc) accept_choices.push_back(acc);
    if (reachable + 1 <= q_max) accept_choices.push_back(reachable);  // unreachable accept
    for (int acc : accept_choices) {
      const int total = acc == reachable ? reachable + 1 : reachable;
      SafetyAutomaton a(n, d, total, 0, acc);
      std::function<void(int, int, int)> fill = [&](int state, int letter, int max_id) {
        if (state == reachable) {
          if (max_id == reachable - 1) out.push_back(a);
          return;
        }
        if (state == acc) return fill(state + 1, 0, max_id);
        if (letter == 0 && state > max_id) return;  // row of an undiscovered state
        if (letter == letters) return fill(state + 1, 0, max_id);
        int limit = std::min(max_id + 1, reachable - 1);
        for (int t = 0; t <= limit; ++t) {
          a.set_transition_index(state, letter, t);
          fill(state, letter + 1, std::max(max_id, t));
        }
        a.set_transition_index(state, letter, state);
      };
      fill(0, 0, 0);
    }
  }
  return out;
}

}  // namespace seplab
