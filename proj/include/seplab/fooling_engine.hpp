#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seplab/common.hpp"
#include "seplab/game_core.hpp"
#include "seplab/parallel.hpp"
#include "seplab/safety_automata.hpp"
#include "seplab/separation_lab.hpp"

namespace seplab {

/// A k-tuple of sorted subsets of [n'].
using SetTuple = std::vector<std::vector<int>>;

struct Params {
  int n = 0;
  int t = 0;
  int n_prime = 0;
  int k = 0;
  Rational gamma;
  int a = 0;
  BigInt q_exponent;  // log2 of the state budget Q

  /// Number of blocks in a certificate, k/5 rounded down.
  int blocks() const { return k / 5; }
};

inline BigInt ceil_div(const BigInt& num, const BigInt& den) { return (num + den - 1) / den; }

inline BigInt q_exponent(const BigInt& n, const BigInt& t) {
  BigInt den = pow(BigInt(1000) * t, 4);
  return ceil_div(pow(n, 5), den);
}

inline Params derive_params(int n, int t) {
  if (n < 1 || t < 0) throw ParameterError("need n >= 1 and t >= 0");
  Params p;
  p.n = n;
  p.t = t;
  p.n_prime = (n + 1) / 2;
  p.k = 20 * (t / n);
  if (p.k == 0) throw ParameterError(detail::concat("k = 20*floor(t/n) = 0 for n=", n, ", t=", t));
  p.gamma = Rational(1, p.k);
  p.a = p.n_prime / p.k;
  p.q_exponent = t == 0 ? BigInt(0) : q_exponent(n, t);
  return p;
}

namespace detail {

/// Block index of p in xbar, or -1.
inline int block_of(const SetTuple& xbar, int p) {
  for (std::size_t i = 0; i < xbar.size(); ++i)
    if (std::binary_search(xbar[i].begin(), xbar[i].end(), p)) return static_cast<int>(i);
  return -1;
}

inline std::vector<int> set_union(const SetTuple& sets) {
  std::set<int> all;
  for (const auto& s : sets) all.insert(s.begin(), s.end());
  return {all.begin(), all.end()};
}

inline std::vector<int> set_minus(const std::vector<int>& x, const std::set<int>& u) {
  std::vector<int> out;
  for (int v : x)
    if (!u.count(v)) out.push_back(v);
  return out;
}

inline std::size_t sym_diff_size(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> out;
  std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out.size();
}

}  // namespace detail

/// p precedes q when p's block comes first, or both share a block and p < q.
inline bool xbar_less(const SetTuple& xbar, int p, int q) {
  int bp = detail::block_of(xbar, p), bq = detail::block_of(xbar, q);
  if (bp < 0 || bq < 0) throw std::out_of_range(detail::concat("node ", bp < 0 ? p : q, " not in the tuple's union"));
  return bp < bq || (bp == bq && p < q);
}

inline bool is_xbar_increasing(const SetTuple& xbar, const PriorityWord& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (detail::block_of(xbar, w[i].node) < 0) return false;
    if (i > 0 && !xbar_less(xbar, w[i - 1].node, w[i].node)) return false;
  }
  return true;
}

/// f^1 #_1 f^2 #_2 ... f^m #_m.
inline PriorityWord interleave_hashes(const std::vector<PriorityWord>& parts, int n_prime) {
  PriorityWord w;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    w.insert(w.end(), parts[j].begin(), parts[j].end());
    w.push_back({n_prime + static_cast<int>(j) + 1, 2});
  }
  return w;
}

/// Odd graph carrying f^1 #_1 ... f^m #_m: block j = v(f^j) + {n'+j} is a
/// priority-1 clique with loops, every block links forward to the next
/// with priority 2, the last block to n'+m+1, which has a priority-1 loop.
/// The graph has n nodes (default n'+m+1); unused nodes get priority-1 loops.
inline GameGraph build_odd_witness(const std::vector<PriorityWord>& fs, int n_prime, std::optional<int> n = std::nullopt) {
  const int m = static_cast<int>(fs.size());
  const int size = n.value_or(n_prime + m + 1);
  if (n_prime + m + 1 > size) throw std::out_of_range(detail::concat("odd witness needs ", n_prime + m + 1, " nodes"));
  std::vector<std::vector<int>> blocks;
  std::set<int> seen;
  for (int j = 0; j < m; ++j) {
    auto nodes = nodes_of_word(fs[j]);
    for (int v : nodes) {
      if (v < 1 || v > n_prime) throw PreconditionError(detail::concat("node ", v, " outside [1,", n_prime, "]"));
      if (!seen.insert(v).second) throw PreconditionError(detail::concat("node ", v, " occurs in two blocks"));
    }
    blocks.emplace_back(nodes.begin(), nodes.end());
    blocks.back().push_back(n_prime + j + 1);
  }
  blocks.push_back({n_prime + m + 1});
  GameGraph g(size, 2);
  for (int j = 0; j < m; ++j) {
    for (int u : blocks[j]) {
      for (int v : blocks[j]) g.set_edge(u, v, 1);
      for (int v : blocks[j + 1]) g.set_edge(u, v, 2);
    }
  }
  g.set_edge(n_prime + m + 1, n_prime + m + 1, 1);
  for (int v = 1; v <= size; ++v)
    if (!g.has_out_edge(v)) g.set_edge(v, v, 1);
  return g;
}

/// Even graph carrying g^1 #_1 ... g^m #_m for X-increasing g^j: priority 1
/// along the order on the union, priority 1 from the union to every hub
/// n'+1..n'+m, priority 2 from every hub back to the union. The graph has
/// n nodes (default n'+m); unused nodes get priority-2 loops.
inline GameGraph build_even_witness(const SetTuple& xbar, int n_prime, int m, std::optional<int> n = std::nullopt) {
  if (m < 1) throw std::out_of_range("even witness needs m >= 1");
  const int size = n.value_or(n_prime + m);
  if (n_prime + m > size) throw std::out_of_range(detail::concat("even witness needs ", n_prime + m, " nodes, budget ", size));
  auto all = detail::set_union(xbar);
  for (int v : all)
    if (v < 1 || v > n_prime) throw PreconditionError(detail::concat("node ", v, " outside [1,", n_prime, "]"));
  GameGraph g(size, 2);
  for (int u : all) {
    for (int v : all)
      if (xbar_less(xbar, u, v)) g.set_edge(u, v, 1);
    for (int h = n_prime + 1; h <= n_prime + m; ++h) {
      g.set_edge(u, h, 1);
      g.set_edge(h, u, 2);
    }
  }
  for (int v = 1; v <= size; ++v)
    if (!g.has_out_edge(v)) g.set_edge(v, v, 2);
  return g;
}

/// The block-wise algorithm: given the blocks f^1..f^j already fixed and a
/// target state q, scan the close tuples (Y_1..Y_k1) of a1-subsets of [n'1]
/// lexicographically for one whose letters (Y_i \ U, 1) drive the
/// automaton from q0 to q. Returns nullopt for "not found".
inline std::optional<PriorityWord> alg1(int n1, int t1, const SafetyAutomaton& a1, const std::vector<PriorityWord>& alpha,
                                        int q, const Caps& caps = {}) {
  if (n1 < 1 || t1 < n1) return std::nullopt;
  Params p = derive_params(n1, t1);
  if (p.q_exponent < 63 && BigInt(a1.states()) > (BigInt(1) << static_cast<unsigned>(p.q_exponent))) return std::nullopt;
  if (q < 0 || q >= a1.states()) return std::nullopt;
  std::set<int> used;
  int q0 = a1.start();
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    for (const auto& l : alpha[j]) {
      if (l.node < 1 || l.node > p.n_prime || l.priority != 1 || l.node > a1.n()) return std::nullopt;
      used.insert(l.node);
      q0 = a1.step(q0, l);
    }
    Letter hash{p.n_prime + static_cast<int>(j) + 1, 2};
    if (hash.node > a1.n() || a1.d() < 2) return std::nullopt;
    q0 = a1.step(q0, hash);
  }
  if (p.a > 0 && (p.n_prime > a1.n() || a1.d() < 1)) return std::nullopt;
  if (binomial_u64(p.n_prime, p.a) > caps.max_tuples)
    detail::refuse(detail::concat("scan over C(", p.n_prime, ",", p.a, ") sets exceeds tuple cap ", caps.max_tuples));

  // |Y_i ^ Y_i'| <= gamma * a  <=>  k * |Y_i ^ Y_i'| <= a.
  std::vector<std::vector<int>> ys;
  PriorityWord found;
  auto pool = detail::iota_vector(1, p.n_prime);
  std::function<bool(int)> pick = [&](int i) -> bool {
    if (i == p.k) {
      PriorityWord w;
      for (const auto& y : ys)
        for (int v : detail::set_minus(y, used)) w.push_back({v, 1});
      if (delta_star(a1, q0, w) != q) return false;
      found = std::move(w);
      return true;
    }
    return detail::for_each_combination(pool, p.a, [&](const std::vector<int>& y) {
      for (const auto& prev : ys)
        if (static_cast<std::uint64_t>(p.k) * detail::sym_diff_size(prev, y) > static_cast<std::uint64_t>(p.a)) return false;
      ys.push_back(y);
      bool done = pick(i + 1);
      ys.pop_back();
      return done;
    });
  };
  if (pick(0)) return found;
  return std::nullopt;
}

/// Block-structured witness of a time-t failure: a disjoint tuple xbar,
/// blocks f^j over [n'] with pairwise disjoint node sets, X-increasing
/// blocks g^j, and both interleavings with #_1..#_m ending in one state.
struct FoolingCertificate {
  int n = 0;
  int t = 0;
  SetTuple xbar;
  std::vector<PriorityWord> fs;
  std::vector<PriorityWord> gs;
};

struct CheckResult {
  bool ok = true;
  std::string reason;  // empty when ok

  static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

inline CheckResult check_fooling_certificate(const SafetyAutomaton& a, const FoolingCertificate& cert) {
  Params p;
  try {
    p = derive_params(cert.n, cert.t);
  } catch (const ParameterError&) {
    return CheckResult::fail("bad-parameters");
  }
  const int m = p.blocks();
  if (m < 1) return CheckResult::fail("no-blocks");
  if (static_cast<int>(cert.fs.size()) != m || static_cast<int>(cert.gs.size()) != m)
    return CheckResult::fail("wrong-block-count");
  if (p.n_prime + m + 1 > cert.n) return CheckResult::fail("hash-letters-outside-alphabet");
  if (a.n() < cert.n || a.d() < 2) return CheckResult::fail("automaton-alphabet");
  if (static_cast<int>(cert.xbar.size()) != p.k) return CheckResult::fail("xbar-size");
  std::set<int> xs;
  for (const auto& x : cert.xbar) {
    if (static_cast<int>(x.size()) != p.a || !std::is_sorted(x.begin(), x.end())) return CheckResult::fail("xbar-set");
    for (int v : x)
      if (v < 1 || v > p.n_prime || !xs.insert(v).second) return CheckResult::fail("xbar-not-disjoint");
  }
  std::set<int> used;
  for (const auto& f : cert.fs) {
    for (const auto& l : f)
      if (l.priority != 1 || l.node < 1 || l.node > p.n_prime) return CheckResult::fail("f-letters");
    auto nodes = nodes_of_word(f);
    for (int v : nodes)
      if (!used.insert(v).second) return CheckResult::fail("f-overlap");
    if (static_cast<std::int64_t>(nodes.size()) * p.k > 2LL * p.n_prime) return CheckResult::fail("f-too-large");
  }
  for (const auto& g : cert.gs) {
    for (const auto& l : g)
      if (l.priority != 1) return CheckResult::fail("g-letters");
    if (!is_xbar_increasing(cert.xbar, g)) return CheckResult::fail("g-not-increasing");
    if (7LL * static_cast<std::int64_t>(g.size()) < 4LL * p.n_prime) return CheckResult::fail("g-too-short");
  }
  auto fw = interleave_hashes(cert.fs, p.n_prime);
  auto gw = interleave_hashes(cert.gs, p.n_prime);
  if (delta_star(a, a.start(), fw) != delta_star(a, a.start(), gw)) return CheckResult::fail("state-mismatch");
  auto odd = build_odd_witness(cert.fs, p.n_prime, cert.n);
  if (classify_graph(odd) != GraphParity::Odd || !is_walk(odd, fw)) return CheckResult::fail("odd-witness");
  auto even = build_even_witness(cert.xbar, p.n_prime, m, cert.n);
  if (classify_graph(even) != GraphParity::Even || !is_walk(even, gw)) return CheckResult::fail("even-witness");
  if (static_cast<std::int64_t>(gw.size()) < cert.t) return CheckResult::fail("g-total-short");
  return {};
}

/// Block-wise construction: walks the disjoint tuples in lexicographic
/// order (at most caps.max_structured_tries of them) and, for each, builds
/// g^r from the tuple and asks alg1 for a matching f^r, block by block.
/// Only meaningful when a >= 1 and k >= 5; otherwise returns nullopt.
inline std::optional<FoolingCertificate> search_structured(const SafetyAutomaton& a, int n, int t, const Caps& caps = {}) {
  Params p = derive_params(n, t);
  const int m = p.blocks();
  if (p.a < 1 || p.k < 5 || p.n_prime + m + 1 > n || a.n() < n || a.d() < 2) return std::nullopt;
  std::uint64_t tries = 0;
  std::optional<FoolingCertificate> result;
  SetTuple xbar;
  std::set<int> taken;

  auto attempt = [&]() -> bool {
    FoolingCertificate cert{n, t, xbar, {}, {}};
    std::set<int> u;
    int q0 = a.start();
    for (int r = 1; r <= m; ++r) {
      PriorityWord g;
      for (const auto& x : xbar)
        for (int v : detail::set_minus(x, u)) g.push_back({v, 1});
      int q = delta_star(a, q0, g);
      auto f = alg1(n, t, a, cert.fs, q, caps);
      if (!f) return false;
      for (const auto& l : *f) u.insert(l.node);
      cert.fs.push_back(*f);
      cert.gs.push_back(std::move(g));
      q0 = a.step(q, {p.n_prime + r, 2});
    }
    if (!check_fooling_certificate(a, cert).ok) return false;
    result = std::move(cert);
    return true;
  };

  std::function<bool()> extend = [&]() -> bool {
    if (static_cast<int>(xbar.size()) == p.k) {
      if (tries++ >= caps.max_structured_tries) return true;
      return attempt();
    }
    std::vector<int> pool;
    for (int v = 1; v <= p.n_prime; ++v)
      if (!taken.count(v)) pool.push_back(v);
    return detail::for_each_combination(pool, p.a, [&](const std::vector<int>& x) {
      xbar.push_back(x);
      taken.insert(x.begin(), x.end());
      bool stop = extend();
      for (int v : x) taken.erase(v);
      xbar.pop_back();
      return stop;
    });
  };
  extend();
  return result;
}

/// Two words driving the automaton into one state: f labels a walk in an
/// odd graph, g a walk of at least t letters in an even graph.
struct FoolingPair {
  PriorityWord f;
  PriorityWord g;
  int state = 0;
  GameGraph odd_graph;
  GameGraph even_graph;
};

namespace detail {

/// Product vertices reachable by walks of at least t letters, with a
/// parent forest that rebuilds a witness: layered parents up to depth t,
/// then BFS parents from the depth-t layer.
struct LateReach {
  std::vector<std::vector<int>> layer_parent;  // [depth][vertex], depth 0..t
  std::vector<int> bfs_parent;                 // -1 for depth-t sources, -2 unreached
};

inline LateReach late_reach(const ProductView& pv, int t, std::optional<int> start_node) {
  const int size = pv.vertex_count();
  LateReach r;
  r.layer_parent.assign(1, std::vector<int>(size, -2));
  std::vector<int> layer;
  for (int s : pv.starts(start_node))
    if (r.layer_parent[0][s] == -2) {
      r.layer_parent[0][s] = -1;
      layer.push_back(s);
    }
  for (int depth = 0; depth < t; ++depth) {
    r.layer_parent.emplace_back(size, -2);
    std::vector<int> next;
    for (int cur : layer)
      pv.for_each_arc(cur, [&](int v, Letter) {
        if (r.layer_parent[depth + 1][v] == -2) {
          r.layer_parent[depth + 1][v] = cur;
          next.push_back(v);
        }
      });
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  r.bfs_parent.assign(size, -2);
  std::deque<int> queue;
  for (int s : layer) {
    r.bfs_parent[s] = -1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    pv.for_each_arc(cur, [&](int v, Letter) {
      if (r.bfs_parent[v] == -2) {
        r.bfs_parent[v] = cur;
        queue.push_back(v);
      }
    });
  }
  return r;
}

inline std::vector<int> late_path(const LateReach& r, int target) {
  std::vector<int> tail;
  int v = target;
  while (r.bfs_parent[v] >= 0) {
    tail.push_back(v);
    v = r.bfs_parent[v];
  }
  std::vector<int> path{v};
  for (std::size_t depth = r.layer_parent.size() - 1; depth > 0; --depth) path.push_back(r.layer_parent[depth][path.back()]);
  std::reverse(path.begin(), path.end());
  path.insert(path.end(), tail.rbegin(), tail.rend());
  return path;
}

inline std::vector<bool> merge_states(std::vector<bool> x, const std::vector<bool>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] || y[i];
  return x;
}

}  // namespace detail

/// Exhaustive fooling-pair search over all graphs on [n] with priorities
/// {1,2}: collects the states reachable on odd graphs and the states
/// reachable after at least t letters on even graphs, and picks the least
/// common state. Witness words come from the first graph (in enumeration
/// order) that realizes that state, so the result is independent of jobs.
inline std::optional<FoolingPair> search_fooling_pair(const SafetyAutomaton& a, int n, int t, const VerifyOptions& opts = {}) {
  detail::check_verify_inputs(a, n, 2);
  if (t < 0) throw std::invalid_argument("t must be >= 0");
  const auto& catalog = GraphCatalog::get(n, 2, opts.caps);
  const std::vector<bool> none(a.states(), false);
  auto reachable_states = [&](GraphParity want, int depth) {
    return parallel::reduce(
        catalog.size(), opts.jobs, none,
        [&](std::uint64_t i) {
          return catalog.visit(i, [&](const GameGraph& g, GraphParity parity) {
            std::vector<bool> out(none);
            if (parity != want) return out;
            detail::ProductView pv{a, g};
            auto r = detail::late_reach(pv, depth, opts.start_node);
            for (int v = 0; v < pv.vertex_count(); ++v)
              if (r.bfs_parent[v] != -2) out[pv.state(v)] = true;
            return out;
          });
        },
        detail::merge_states);
  };
  auto odd_states = reachable_states(GraphParity::Odd, 0);
  auto even_states = reachable_states(GraphParity::Even, t);
  int q = -1;
  for (int s = 0; s < a.states() && q < 0; ++s)
    if (odd_states[s] && even_states[s]) q = s;
  if (q < 0) return std::nullopt;

  auto witness = [&](GraphParity want, int depth) {
    auto hit = parallel::first_match(catalog.size(), opts.jobs, [&](std::uint64_t i) {
      return catalog.visit(i, [&](const GameGraph& g, GraphParity parity) -> std::optional<std::pair<GameGraph, PriorityWord>> {
        if (parity != want) return std::nullopt;
        detail::ProductView pv{a, g};
        auto r = detail::late_reach(pv, depth, opts.start_node);
        for (int v = 0; v < pv.vertex_count(); ++v)
          if (r.bfs_parent[v] != -2 && pv.state(v) == q)
            return std::make_pair(g, detail::letters_between(pv, detail::late_path(r, v)));
        return std::nullopt;
      });
    });
    return std::move(hit->second);
  };
  auto [odd_graph, f] = witness(GraphParity::Odd, 0);
  auto [even_graph, g] = witness(GraphParity::Even, t);
  return FoolingPair{std::move(f), std::move(g), q, std::move(odd_graph), std::move(even_graph)};
}

/// Independent re-check of a fooling pair against the realizability
/// definitions (not against the graphs stored in the pair).
inline CheckResult check_fooling_pair(const SafetyAutomaton& a, int n, int t, const FoolingPair& pair, const Caps& caps = {}) {
  if (!is_cycles_prefix(pair.f, n, 2, GraphParity::Odd, caps)) return CheckResult::fail("f-not-odd-prefix");
  if (!is_cycles_prefix(pair.g, n, 2, GraphParity::Even, caps)) return CheckResult::fail("g-not-even-prefix");
  if (static_cast<int>(pair.g.size()) < t) return CheckResult::fail("g-too-short");
  int qf = delta_star(a, a.start(), pair.f), qg = delta_star(a, a.start(), pair.g);
  if (qf != qg) return CheckResult::fail("state-mismatch");
  return {};
}

/// The time-t counterexample a fooling pair stands for: if the shared
/// state accepts, the odd word is accepted; otherwise the even word of
/// length >= t is not.
inline Counterexample pair_violation(const SafetyAutomaton& a, const FoolingPair& pair) {
  if (pair.state == a.accept()) return {pair.odd_graph, pair.f, FailureReason::OddAccepted, std::nullopt};
  return {pair.even_graph, pair.g, FailureReason::EvenNotAcceptedByT, std::nullopt};
}

struct ArithmeticCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

/// floor(n^(5/4) / 1000), the largest t allowed by t^4 <= n^5 / 10^12.
inline BigInt max_time_for(const BigInt& n) {
  BigInt fifth = pow(n, 5);
  BigInt root = sqrt(fifth);
  return BigInt(sqrt(root)) / 1000;
}

/// Hypotheses of the lower-bound argument: 8n <= t and t^4 <= n^5 / 10^12.
inline std::vector<ArithmeticCheck> parameter_hypotheses(const BigInt& n, const BigInt& t) {
  return {{"t >= 8n", t >= 8 * n, detail::concat("t=", t, ", 8n=", 8 * n)},
          {"t^4 <= n^5/10^12", pow(t, 4) * pow(BigInt(10), 12) <= pow(n, 5), detail::concat("t=", t, ", limit=", max_time_for(n))}};
}

/// The three parameter inequalities the communication argument needs,
/// evaluated exactly at (n, t) with L = log2 Q:
///   (2k+1) L + 1 <= 3k L,   k/gamma = k^2 <= sqrt(n')/100,   L < n^5 / (10^11 t^4).
inline std::vector<ArithmeticCheck> replay_parameter_chain(const BigInt& n, const BigInt& t) {
  BigInt n_prime = (n + 1) / 2;
  BigInt k = 20 * (t / n);
  std::vector<ArithmeticCheck> out;
  if (k == 0 || t == 0) {
    std::string why = detail::concat("k = 20*floor(t/n) = 0 at n=", n, ", t=", t);
    for (const char* name : {"CC(P) <= 3k log2 Q", "k/gamma <= sqrt(n')/100", "log2 Q < n^5/(10^11 t^4)"})
      out.push_back({name, false, why});
    return out;
  }
  BigInt L = q_exponent(n, t);
  out.push_back({"CC(P) <= 3k log2 Q", (2 * k + 1) * L + 1 <= 3 * k * L,
                 detail::concat("k=", k, ", log2 Q=", L, ", lhs=", (2 * k + 1) * L + 1, ", rhs=", 3 * k * L)});
  // k^2 <= sqrt(n')/100  <=>  10^4 k^4 <= n'
  out.push_back({"k/gamma <= sqrt(n')/100", 10000 * pow(k, 4) <= n_prime,
                 detail::concat("10^4 k^4=", 10000 * pow(k, 4), ", n'=", n_prime)});
  out.push_back({"log2 Q < n^5/(10^11 t^4)", L * pow(BigInt(10), 11) * pow(t, 4) < pow(n, 5),
                 detail::concat("log2 Q * 10^11 t^4=", L * pow(BigInt(10), 11) * pow(t, 4), ", n^5=", pow(n, 5))});
  return out;
}

/// Block length bound: with |U| <= floor(k/5) * floor(2n'/k), every
/// g^r = (X_1 \ U, 1)...(X_k \ U, 1) has k*a - |U| >= 4n'/7 letters.
inline bool length_lemma_holds(const BigInt& n, const BigInt& t) {
  BigInt n_prime = (n + 1) / 2;
  BigInt k = 20 * (t / n);
  if (k == 0) return false;
  BigInt a = n_prime / k;
  BigInt used = (k / 5) * ((2 * n_prime) / k);
  return 7 * (k * a - used) >= 4 * n_prime;
}

}  // namespace seplab
