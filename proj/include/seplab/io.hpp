#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "seplab/comm_complexity.hpp"
#include "seplab/extremal_families.hpp"
#include "seplab/fooling_engine.hpp"
#include "seplab/game_core.hpp"
#include "seplab/safety_automata.hpp"
#include "seplab/separation_lab.hpp"

namespace seplab::io {

using Json = nlohmann::json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type");
  }
}

// Words: [[node, priority], ...]

inline Json to_json(const PriorityWord& w) {
  Json out = Json::array();
  for (const auto& l : w) out.push_back({l.node, l.priority});
  return out;
}

inline PriorityWord word_from_json(const Json& j) {
  PriorityWord w;
  for (const auto& l : j) {
    if (!l.is_array() || l.size() != 2) throw ValidationError("letter must be [node, priority]");
    w.push_back({l[0].get<int>(), l[1].get<int>()});
  }
  return w;
}

inline std::string word_to_string(const PriorityWord& w) {
  std::string s;
  for (const auto& l : w) s += detail::concat("(", l.node, ",", l.priority, ")");
  return s.empty() ? "()" : s;
}

// Graphs: {"n", "d", "edges": [[u, v, p], ...]}

inline Json to_json(const GameGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.from, e.to, e.priority});
  return {{"n", g.n()}, {"d", g.d()}, {"edges", edges}};
}

inline GameGraph graph_from_json(const Json& j) {
  std::vector<Edge> edges;
  for (const auto& e : field<Json>(j, "edges")) {
    if (!e.is_array() || e.size() != 3) throw ValidationError("edge must be [from, to, priority]");
    edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
  }
  int n = field<int>(j, "n"), d = field<int>(j, "d");
  for (const auto& e : edges)
    if (e.from < 1 || e.from > n || e.to < 1 || e.to > n || e.priority < 1 || e.priority > d)
      throw ValidationError(detail::concat("edge ", e.from, "->", e.to, " (", e.priority, ") outside [", n, "]x[", d, "]"));
  return GameGraph::from_edges(n, d, edges);
}

inline std::string to_dot(const GameGraph& g) {
  std::ostringstream os;
  os << "digraph G {\n";
  for (int v = 1; v <= g.n(); ++v) os << "  " << v << ";\n";
  for (const auto& e : g.edges()) os << "  " << e.from << " -> " << e.to << " [label=\"" << e.priority << "\"];\n";
  os << "}\n";
  return os.str();
}

// Automata: {"n", "d", "states", "start", "accept", "delta": [[q, node, pri, target], ...]}.
// Rows out of the accepting state may be omitted; it is made absorbing.

inline Json to_json(const SafetyAutomaton& a) {
  Json delta = Json::array();
  for (int q = 0; q < a.states(); ++q)
    for (int l = 0; l < a.alphabet_size(); ++l) {
      Letter letter = a.letter_at(l);
      delta.push_back({q, letter.node, letter.priority, a.step_index(q, l)});
    }
  return {{"n", a.n()}, {"d", a.d()}, {"states", a.states()}, {"start", a.start()}, {"accept", a.accept()}, {"delta", delta}};
}

inline SafetyAutomaton automaton_from_json(const Json& j) {
  SafetyAutomaton a(field<int>(j, "n"), field<int>(j, "d"), field<int>(j, "states"), field<int>(j, "start"),
                    field<int>(j, "accept"));
  std::vector<bool> seen(static_cast<std::size_t>(a.states()) * a.alphabet_size(), false);
  for (const auto& row : field<Json>(j, "delta")) {
    if (!row.is_array() || row.size() != 4) throw ValidationError("transition must be [state, node, priority, target]");
    int q = row[0].get<int>(), target = row[3].get<int>();
    Letter l{row[1].get<int>(), row[2].get<int>()};
    if (q < 0 || q >= a.states() || target < 0 || target >= a.states())
      throw ValidationError(detail::concat("transition state outside [0,", a.states(), ")"));
    int index;
    try {
      index = a.letter_index(l);
    } catch (const std::out_of_range& e) {
      throw ValidationError(e.what());
    }
    auto slot = static_cast<std::size_t>(q) * a.alphabet_size() + index;
    if (seen[slot]) throw ValidationError(detail::concat("duplicate transition from state ", q));
    seen[slot] = true;
    a.set_transition_index(q, index, target);
  }
  for (int q = 0; q < a.states(); ++q) {
    if (q == a.accept()) continue;
    for (int l = 0; l < a.alphabet_size(); ++l)
      if (!seen[static_cast<std::size_t>(q) * a.alphabet_size() + l])
        throw ValidationError(detail::concat("state ", q, " lacks a transition on letter ", l));
  }
  return make_absorbing(a);
}

inline std::string to_dot(const SafetyAutomaton& a) {
  std::ostringstream os;
  os << "digraph A {\n  rankdir=LR;\n";
  for (int q = 0; q < a.states(); ++q)
    os << "  q" << q << " [shape=" << (q == a.accept() ? "doublecircle" : "circle") << "];\n";
  os << "  init [shape=point];\n  init -> q" << a.start() << ";\n";
  for (int q = 0; q < a.states(); ++q) {
    std::map<int, std::string> labels;
    for (int l = 0; l < a.alphabet_size(); ++l) {
      Letter letter = a.letter_at(l);
      auto& s = labels[a.step_index(q, l)];
      s += (s.empty() ? "" : " ") + detail::concat("(", letter.node, ",", letter.priority, ")");
    }
    for (const auto& [target, label] : labels) os << "  q" << q << " -> q" << target << " [label=\"" << label << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

// Arenas: a graph plus "owner": [0|1 per node] and "initial".

inline ParityArena arena_from_json(const Json& j) {
  ParityArena arena{graph_from_json(j), {}, field<int>(j, "initial")};
  for (const auto& o : field<Json>(j, "owner")) {
    int v = o.get<int>();
    if (v != 0 && v != 1) throw ValidationError("owner entries must be 0 or 1");
    arena.owner.push_back(v == 0 ? Player::Even : Player::Odd);
  }
  arena.validate();
  return arena;
}

inline Json to_json(const ParityArena& arena) {
  Json j = to_json(arena.graph);
  Json owner = Json::array();
  for (auto p : arena.owner) owner.push_back(p == Player::Even ? 0 : 1);
  j["owner"] = owner;
  j["initial"] = arena.initial;
  return j;
}

inline Json to_json(const Counterexample& c) {
  Json j{{"graph", to_json(c.graph)}, {"word", to_json(c.word)}, {"reason", std::string(to_string(c.reason))}};
  if (c.loop_start) j["loop_start"] = *c.loop_start;
  return j;
}

// Families: sorted list of sorted lists.

inline Json to_json(const SetFamily& f) {
  Json out = Json::array();
  for (const auto& s : f.members) out.push_back(s);
  return out;
}

inline SetFamily family_from_json(const Json& j, int n, int a) {
  if (!j.is_array()) throw ValidationError("family must be a list of lists");
  std::vector<Subset> members;
  for (const auto& s : j) members.push_back(s.get<Subset>());
  SetFamily f(n, a, std::move(members));
  f.validate();
  return f;
}

/// Infers a from the first member when the family is non-empty.
inline SetFamily family_from_json(const Json& j, int n) {
  int a = j.is_array() && !j.empty() && j[0].is_array() ? static_cast<int>(j[0].size()) : 0;
  return family_from_json(j, n, a);
}

inline Json to_json(const Params& p) {
  return {{"n", p.n}, {"t", p.t}, {"n_prime", p.n_prime}, {"k", p.k}, {"gamma", p.gamma.str()}, {"a", p.a},
          {"q_exponent", p.q_exponent.str()}, {"blocks", p.blocks()}};
}

// Fooling certificates embed the automaton they refer to.

inline Json to_json(const SafetyAutomaton& a, const FoolingCertificate& c) {
  Json fs = Json::array(), gs = Json::array();
  for (const auto& f : c.fs) fs.push_back(to_json(f));
  for (const auto& g : c.gs) gs.push_back(to_json(g));
  return {{"kind", "structured"}, {"n", c.n}, {"t", c.t}, {"xbar", c.xbar}, {"fs", fs}, {"gs", gs}, {"automaton", to_json(a)}};
}

inline Json to_json(const SafetyAutomaton& a, int n, int t, const FoolingPair& p) {
  return {{"kind", "pair"},
          {"n", n},
          {"t", t},
          {"f", to_json(p.f)},
          {"g", to_json(p.g)},
          {"state", p.state},
          {"odd_graph", to_json(p.odd_graph)},
          {"even_graph", to_json(p.even_graph)},
          {"automaton", to_json(a)}};
}

inline FoolingCertificate structured_from_json(const Json& j) {
  FoolingCertificate c;
  c.n = field<int>(j, "n");
  c.t = field<int>(j, "t");
  c.xbar = field<SetTuple>(j, "xbar");
  for (const auto& f : field<Json>(j, "fs")) c.fs.push_back(word_from_json(f));
  for (const auto& g : field<Json>(j, "gs")) c.gs.push_back(word_from_json(g));
  return c;
}

inline FoolingPair pair_from_json(const Json& j) {
  FoolingPair p;
  p.f = word_from_json(field<Json>(j, "f"));
  p.g = word_from_json(field<Json>(j, "g"));
  p.state = j.value("state", 0);
  if (j.contains("odd_graph")) p.odd_graph = graph_from_json(j["odd_graph"]);
  if (j.contains("even_graph")) p.even_graph = graph_from_json(j["even_graph"]);
  return p;
}

// Cover certificates: {"n", "k", "gamma": "1/2", "boxes": [[family, ..., family], ...]}.

inline Json to_json(const CoverCertificate& c) {
  Json boxes = Json::array();
  for (const auto& b : c.boxes) {
    Json box = Json::array();
    for (const auto& f : b.factors) box.push_back(to_json(f));
    boxes.push_back(box);
  }
  return {{"n", c.instance.n}, {"k", c.instance.k}, {"gamma", c.instance.gamma.str()}, {"boxes", boxes}};
}

inline CoverCertificate cover_from_json(const Json& j) {
  CoverCertificate c;
  c.instance.n = field<int>(j, "n");
  c.instance.k = field<int>(j, "k");
  const auto& gamma = field<Json>(j, "gamma");
  c.instance.gamma = gamma.is_string() ? parse_rational(gamma.get<std::string>()) : parse_rational(gamma.dump());
  c.instance.validate();
  for (const auto& box : field<Json>(j, "boxes")) {
    Box b;
    for (const auto& f : box) b.factors.push_back(family_from_json(f, c.instance.n, c.instance.a()));
    c.boxes.push_back(std::move(b));
  }
  return c;
}

}  // namespace seplab::io
