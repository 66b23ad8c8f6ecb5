#pragma once

#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seplab/io.hpp"

namespace seplab::cli {

using io::Json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// What a subcommand produced. JSON is canonical; CSV falls back to
/// key,value lines of the top-level scalars when no table is given.
struct Report {
  Json data = Json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string dot;
  int status = 0;
};

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline void emit(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << r.data.dump(2) << "\n";
  } else if (format == "csv") {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
      out << "\n";
    };
    if (!r.header.empty()) {
      line(r.header);
      for (const auto& row : r.rows) line(row);
    } else {
      line({"key", "value"});
      for (const auto& [key, value] : r.data.items())
        if (!value.is_structured()) line({key, scalar_text(value)});
    }
  } else if (format == "dot") {
    if (r.dot.empty()) throw UsageError("this subcommand has no DOT output");
    out << r.dot;
  } else {
    throw UsageError("unknown format '" + format + "'");
  }
}

inline double as_double(const Float& x) { return x.convert_to<double>(); }
inline double as_double(const Rational& x) { return to_float(x).convert_to<double>(); }

inline std::string fixed(const Float& x, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

}  // namespace detail

struct AutomatonSource {
  std::string file;
  int counter = 0;
  int threshold = -1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--automaton", file, "automaton JSON file");
    cmd->add_option("--counter", counter, "use the counter automaton over [N]x{1,2}");
    cmd->add_option("--threshold", threshold, "counter threshold (default N+1)");
  }

  bool given() const { return !file.empty() || counter > 0; }

  SafetyAutomaton load() const {
    if (!file.empty() && counter > 0) throw UsageError("give either --automaton or --counter, not both");
    if (!file.empty()) return io::automaton_from_json(io::read_json_file(file));
    if (counter > 0) return counter_automaton(counter, threshold < 0 ? counter + 1 : threshold);
    throw UsageError("an automaton is required (--automaton FILE or --counter N)");
  }
};

struct Globals {
  std::string format = "json";
  int jobs = 1;
  std::uint64_t seed = 1;
  std::string caps_text;
  Caps caps;

  VerifyOptions verify_options() const {
    VerifyOptions o;
    o.jobs = jobs;
    o.caps = caps;
    return o;
  }
};

// ---------------------------------------------------------------- classify

inline Report cmd_classify(const Globals& g, const std::string& graph_file, int n, int d) {
  Report r;
  if (!graph_file.empty()) {
    auto graph = io::graph_from_json(io::read_json_file(graph_file));
    auto parity = classify_graph(graph);
    r.data = {{"parity", std::string(to_string(parity))}, {"graph", io::to_json(graph)}};
    r.dot = io::to_dot(graph);
    return r;
  }
  if (n < 1 || d < 1) throw UsageError("classify needs --graph FILE or --n N --d D");
  const auto& catalog = GraphCatalog::get(n, d, g.caps);
  std::array<std::uint64_t, 3> counts{};
  for (std::uint64_t i = 0; i < catalog.size(); ++i)
    catalog.visit(i, [&](const GameGraph&, GraphParity p) { ++counts[static_cast<int>(p)]; });
  r.data = {{"n", n}, {"d", d}, {"total", catalog.size()}, {"even", counts[0]}, {"odd", counts[1]}, {"neither", counts[2]}};
  r.header = {"n", "d", "total", "even", "odd", "neither"};
  r.rows.push_back({std::to_string(n), std::to_string(d), std::to_string(catalog.size()), std::to_string(counts[0]),
                    std::to_string(counts[1]), std::to_string(counts[2])});
  return r;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  AutomatonSource source;
  int n = 0;
  int d = 0;
  std::optional<int> time;
  std::optional<int> start_node;
  bool derive = false;
};

inline Report cmd_verify(const Globals& g, const VerifyArgs& args) {
  auto a = args.source.load();
  int n = args.n > 0 ? args.n : a.n();
  int d = args.d > 0 ? args.d : a.d();
  auto opts = g.verify_options();
  opts.start_node = args.start_node;
  Report r;
  r.dot = io::to_dot(a);
  r.data = {{"n", n}, {"d", d}, {"states", a.states()}};
  if (args.derive) {
    try {
      int t = derive_time_bound(a, n, d, opts);
      r.data["ok"] = true;
      r.data["time_bound"] = t;
      r.data["qn"] = a.states() * n;
      r.data["within_qn"] = t <= a.states() * n;
      r.status = t <= a.states() * n ? 0 : 1;
    } catch (const NotASeparator& e) {
      r.data["ok"] = false;
      r.data["counterexample"] = io::to_json(e.counterexample);
      r.status = 1;
    }
    return r;
  }
  Verdict v = args.time ? verify_time_t(a, n, d, *args.time, opts) : verify_unrestricted(a, n, d, opts);
  r.data["mode"] = args.time ? "time" : "unrestricted";
  if (args.time) r.data["t"] = *args.time;
  r.data["ok"] = v.ok;
  if (v.counterexample) {
    r.data["counterexample"] = io::to_json(*v.counterexample);
    r.data["reason"] = std::string(to_string(v.counterexample->reason));
    r.data["word"] = io::word_to_string(v.counterexample->word);
    r.dot = io::to_dot(v.counterexample->graph);
  }
  r.status = v.ok ? 0 : 1;
  return r;
}

// ---------------------------------------------------------------- refute

struct RefuteArgs {
  AutomatonSource source;
  int n = 0;
  bool all = false;
  int states = 0;
};

inline Report cmd_refute(const Globals& g, const RefuteArgs& args) {
  Report r;
  auto row_for = [&](int index, const SafetyAutomaton& a, int n) {
    auto cex = refute_small_separator(a, n);
    bool confirmed = confirm_counterexample(a, cex);
    Json j = io::to_json(cex);
    j["index"] = index;
    j["states"] = a.states();
    j["confirmed"] = confirmed;
    r.rows.push_back({std::to_string(index), std::to_string(a.states()), std::to_string(a.start()), std::to_string(a.accept()),
                      std::string(to_string(cex.reason)), io::word_to_string(cex.word),
                      cex.loop_start ? std::to_string(*cex.loop_start) : "", confirmed ? "true" : "false"});
    if (!confirmed) r.status = 1;
    return j;
  };
  r.header = {"index", "states", "start", "accept", "reason", "word", "loop_start", "confirmed"};
  if (args.all) {
    if (args.n < 1 || args.states < 1) throw UsageError("refute --all needs --states Q and --n N");
    if (args.states > args.n) throw UsageError("refutation applies only to automata with at most n states");
    auto automata = enumerate_automata(args.n, 2, args.states, g.caps);
    Json list = Json::array();
    for (std::size_t i = 0; i < automata.size(); ++i) list.push_back(row_for(static_cast<int>(i), automata[i], args.n));
    r.data = {{"n", args.n}, {"max_states", args.states}, {"automata", automata.size()}, {"all_confirmed", r.status == 0},
              {"counterexamples", list}};
    return r;
  }
  auto a = args.source.load();
  int n = args.n > 0 ? args.n : a.n();
  r.data = row_for(0, a, n);
  r.dot = io::to_dot(r.data.contains("graph") ? io::graph_from_json(r.data["graph"]) : GameGraph(1, 1));
  return r;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string arena_file;
  AutomatonSource source;
  std::string via = "separator";
  bool trust = false;
};

inline Report cmd_solve(const Globals& g, const SolveArgs& args) {
  if (args.arena_file.empty()) throw UsageError("solve needs --arena FILE");
  auto arena = io::arena_from_json(io::read_json_file(args.arena_file));
  Report r;
  r.dot = io::to_dot(arena.graph);
  r.data["via"] = args.via;
  if (args.via == "direct") {
    auto s = solve_parity_direct(arena, g.caps);
    r.data["winner"] = std::string(to_string(s.winner));
    if (s.strategy) r.data["strategy"] = *s.strategy;
  } else if (args.via == "separator") {
    auto a = args.source.given() ? args.source.load() : counter_separator(arena.n());
    r.data["states"] = a.states();
    r.data["winner"] = std::string(to_string(solve_parity_via_separator(arena, a, args.trust, g.verify_options())));
  } else {
    throw UsageError("--via must be 'separator' or 'direct'");
  }
  return r;
}

// ---------------------------------------------------------------- fool

struct FoolArgs {
  AutomatonSource source;
  int n = 0;
  int t = -1;
  bool structured = false;
  std::string check_file;
  std::string out_file;
};

inline Report cmd_fool(const Globals& g, const FoolArgs& args) {
  Report r;
  if (!args.check_file.empty()) {
    auto j = io::read_json_file(args.check_file);
    auto a = io::automaton_from_json(io::field<Json>(j, "automaton"));
    auto kind = io::field<std::string>(j, "kind");
    CheckResult c;
    if (kind == "pair") c = check_fooling_pair(a, io::field<int>(j, "n"), io::field<int>(j, "t"), io::pair_from_json(j), g.caps);
    else if (kind == "structured") c = check_fooling_certificate(a, io::structured_from_json(j));
    else throw UsageError("unknown certificate kind '" + kind + "'");
    r.data = {{"kind", kind}, {"valid", c.ok}, {"reason", c.reason}};
    r.status = c.ok ? 0 : 1;
    return r;
  }
  auto a = args.source.load();
  int n = args.n > 0 ? args.n : a.n();
  if (args.t < 0) throw UsageError("fool needs --t T");
  Json cert;
  if (args.structured) {
    auto c = search_structured(a, n, args.t, g.caps);
    if (c) cert = io::to_json(a, *c);
  } else {
    auto p = search_fooling_pair(a, n, args.t, g.verify_options());
    if (p) cert = io::to_json(a, n, args.t, *p);
  }
  r.data = {{"n", n}, {"t", args.t}, {"mode", args.structured ? "structured" : "pair"}, {"found", !cert.is_null()}};
  if (!cert.is_null()) {
    r.data["certificate"] = cert;
    if (!args.out_file.empty()) io::write_json_file(args.out_file, cert);
  }
  r.status = cert.is_null() ? 0 : 1;
  return r;
}

// ---------------------------------------------------------------- extremal

struct ExtremalArgs {
  int n = 0;
  int a = 0;
  std::optional<int> t;
  int i = 0;
  int j = 0;
  std::string family_file;
  std::string g_file;
  int random = 0;
};

inline Report cmd_extremal(const Globals& g, const std::string& op, const ExtremalArgs& x) {
  Report r;
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw UsageError(std::string("extremal ") + op + " needs " + what);
  };
  if (op == "shift") {
    if (x.random > 0) {
      auto s = run_shift_suite(g.seed, x.random);
      r.data = {{"cases", s.cases}, {"far_violations", s.far_violations}, {"size_violations", s.size_violations},
                {"compress_violations", s.compress_violations}, {"seed", g.seed}};
      r.status = s.far_violations + s.size_violations + s.compress_violations == 0 ? 0 : 1;
      return r;
    }
    need(!x.family_file.empty() && x.n > 0 && x.i > 0 && x.j > 0, "--family FILE --n N --i I --j J (or --random COUNT)");
    auto f = io::family_from_json(io::read_json_file(x.family_file), x.n);
    auto s = shift_family(f, x.i, x.j);
    r.data = {{"input", io::to_json(f)}, {"shifted", io::to_json(s)}, {"i", x.i}, {"j", x.j}};
    return r;
  }
  if (op == "compress") {
    need(!x.family_file.empty() && !x.g_file.empty() && x.n > 0, "--family F.json --g G.json --n N");
    auto f = io::family_from_json(io::read_json_file(x.family_file), x.n);
    auto gg = io::family_from_json(io::read_json_file(x.g_file), x.n, f.a);
    auto c = compress_pair(f, gg);
    Json steps = Json::array();
    for (auto [i, j] : c.steps) steps.push_back({i, j});
    r.data = {{"f", io::to_json(c.f)}, {"g", io::to_json(c.g)}, {"steps", steps}, {"potentials", c.potentials},
              {"left_compressed", is_left_compressed(c.f)}};
    return r;
  }
  if (op == "fi-check" && !x.family_file.empty()) {
    need(!x.g_file.empty() && x.n > 0 && x.t.has_value(), "--family F.json --g G.json --n N --t T");
    auto f = io::family_from_json(io::read_json_file(x.family_file), x.n);
    auto gg = io::family_from_json(io::read_json_file(x.g_file), x.n, f.a);
    bool holds = fi_condition(f, gg, *x.t);
    r.data = {{"n", x.n}, {"a", f.a}, {"t", *x.t}, {"fi_condition", holds}};
    r.status = holds ? 0 : 1;
    return r;
  }
  if (op == "fi-check") {
    need(x.n > 0 && x.a > 0, "--n N --a A (or --family F.json --g G.json)");
    r.header = {"n", "a", "cases", "violations"};
    std::uint64_t violations = 0;
    Json per = Json::array();
    for (int a = 1; a <= x.a; ++a) {
      if (a > x.n) break;
      auto s = check_fi_equivalence(x.n, a, x.t, g.caps);
      violations += s.violations;
      per.push_back({{"a", a}, {"cases", s.cases}, {"violations", s.violations}});
      r.rows.push_back({std::to_string(x.n), std::to_string(a), std::to_string(s.cases), std::to_string(s.violations)});
    }
    r.data = {{"n", x.n}, {"max_a", x.a}, {"violations", violations}, {"sweeps", per}};
    r.status = violations == 0 ? 0 : 1;
    return r;
  }
  need(x.n > 0 && x.a > 0 && x.t.has_value(), "--n N --a A --t T");
  const int n = x.n, a = x.a, t = *x.t;
  if (op == "bound") {
    r.data = {{"n", n}, {"a", a}, {"t", t}, {"theorem3_bound", detail::as_double(theorem3_bound(n, a, t))},
              {"prob_bound_rhs", detail::as_double(prob_bound_rhs(n, a, t))},
              {"lemma9_threshold_k2", detail::as_double(lemma9_threshold(n, a, t, 2))},
              {"binom_lower_bound", detail::as_double(binom_lower_bound(n, a))}, {"binomial", binomial(n, a).str()}};
    return r;
  }
  if (op == "maxprod") {
    auto m = max_product_bruteforce(n, a, t, g.caps);
    bool holds = Rational(m.value) <= theorem3_bound_lower(n, a, t);
    r.data = {{"n", n}, {"a", a}, {"t", t}, {"max_product", m.value.str()}, {"f", io::to_json(m.f)}, {"g", io::to_json(m.g)},
              {"theorem3_bound", detail::as_double(theorem3_bound(n, a, t))}, {"within_bound", holds}};
    r.status = holds ? 0 : 1;
    return r;
  }
  if (op == "prob") {
    auto p = check_prob_lemma(n, a, t, g.caps);
    r.data = {{"n", n}, {"a", a}, {"t", t}, {"ideals", p.sweep.cases}, {"violations", p.sweep.violations},
              {"max_lhs", p.max_lhs.str()}, {"max_lhs_value", detail::as_double(p.max_lhs)},
              {"rhs", detail::as_double(prob_bound_rhs(n, a, t))}};
    r.status = p.sweep.violations == 0 ? 0 : 1;
    return r;
  }
  throw UsageError("unknown extremal operation '" + op + "'");
}

// ---------------------------------------------------------------- comm

struct CommArgs {
  int n = 0;
  int k = 0;
  int a = 0;
  int t = -1;
  std::string gamma;
  std::string set = "D";
  std::string cert_file;
  std::string out_file;
};

inline Report cmd_comm(const Globals& g, const std::string& op, const CommArgs& x, std::ostream& err) {
  Report r;
  auto instance = [&] {
    if (x.n < 1 || x.k < 1 || x.gamma.empty()) throw UsageError("comm " + op + " needs --n N --k K --gamma G");
    DisjPrimeInstance inst{x.n, x.k, parse_rational(x.gamma)};
    inst.validate();
    if (inst.degenerate()) err << "warning: a = floor(n/k) = 0; D and I coincide and DISJ' is undefined everywhere\n";
    return inst;
  };
  if (op == "gen") {
    auto inst = instance();
    auto tuples = x.set == "I" ? gen_I(inst, g.caps) : x.set == "D" ? gen_D(inst, g.caps) : throw UsageError("--set must be D or I");
    r.data = {{"n", inst.n}, {"k", inst.k}, {"a", inst.a()}, {"gamma", inst.gamma.str()}, {"set", x.set}, {"count", tuples.size()},
              {"tuples", tuples}};
    if (x.set == "D") r.data["formula"] = size_of_D(inst.n, inst.k).str();
    r.header = {"index", "tuple"};
    for (std::size_t i = 0; i < tuples.size(); ++i) r.rows.push_back({std::to_string(i), Json(tuples[i]).dump()});
    return r;
  }
  if (op == "check") {
    if (x.cert_file.empty()) throw UsageError("comm check needs --cert FILE");
    auto cert = io::cover_from_json(io::read_json_file(x.cert_file));
    bool ok = check_cover(cert, g.caps);
    r.data = {{"valid", ok}, {"boxes", cert.boxes.size()}};
    r.status = ok ? 0 : 1;
    return r;
  }
  if (op == "mincover") {
    auto inst = instance();
    auto m = min_cover_bruteforce(inst, g.caps);
    CoverCertificate cert{inst, m.boxes};
    r.data = {{"n", inst.n}, {"k", inst.k}, {"gamma", inst.gamma.str()}, {"min_cover", m.size}, {"certificate", io::to_json(cert)}};
    if (!x.out_file.empty()) io::write_json_file(x.out_file, io::to_json(cert));
    return r;
  }
  if (op == "bound") {
    if (x.n < 1 || x.k < 1 || x.gamma.empty()) throw UsageError("comm bound needs --n N --k K --gamma G");
    auto v = thm4_lower_bound(BigInt(x.n), x.k, parse_rational(x.gamma));
    r.data = {{"n", x.n}, {"k", x.k}, {"gamma", x.gamma}, {"applicable", v.has_value()}};
    if (v) r.data["lower_bound"] = detail::as_double(*v);
    return r;
  }
  if (op == "A") {
    if (x.n < 1 || x.a < 1 || x.t < 0 || x.k < 2) throw UsageError("comm A needs --n N --a A --t T --k K");
    auto value = A_bruteforce(x.n, x.a, x.t, x.k, g.caps);
    r.data = {{"n", x.n}, {"a", x.a}, {"t", x.t}, {"k", x.k}, {"A", value.str()},
              {"lemma9_threshold", detail::as_double(lemma9_threshold(x.n, x.a, x.t, x.k))}};
    return r;
  }
  throw UsageError("unknown comm operation '" + op + "'");
}

// ---------------------------------------------------------------- bounds / params

inline Report cmd_bounds(const std::string& n_text, const std::string& t_text) {
  Report r;
  std::vector<std::pair<BigInt, BigInt>> points;
  if (!n_text.empty()) {
    if (t_text.empty()) throw UsageError("bounds needs --t with --n");
    points.push_back({BigInt(n_text), BigInt(t_text)});
  } else {
    for (BigInt n : {BigInt(10000), BigInt(100000), BigInt(1000000)})
      for (BigInt t : {BigInt(8 * n), BigInt(16 * n), max_time_for(n)}) points.push_back({n, t});
  }
  r.header = {"n", "t", "check", "holds", "detail"};
  Json list = Json::array();
  bool all = true;
  for (const auto& [n, t] : points) {
    auto emit = [&](const ArithmeticCheck& c, bool counts) {
      r.rows.push_back({n.str(), t.str(), c.name, c.holds ? "true" : "false", c.detail});
      list.push_back({{"n", n.str()}, {"t", t.str()}, {"check", c.name}, {"holds", c.holds}, {"detail", c.detail}, {"hypothesis", !counts}});
      if (counts) all = all && c.holds;
    };
    for (const auto& c : parameter_hypotheses(n, t)) emit(c, false);
    for (const auto& c : replay_parameter_chain(n, t)) emit(c, true);
    emit({"|g^r| >= 4n'/7", length_lemma_holds(n, t), "block length arithmetic"}, false);
  }
  r.data = {{"all_hold", all}, {"checks", list}};
  r.status = all ? 0 : 1;
  return r;
}

inline Report cmd_params(int n, int t) {
  Report r;
  r.data = io::to_json(derive_params(n, t));
  return r;
}

// ---------------------------------------------------------------- entry

/// Runs one command line (without the program name). Exit codes: 0 for an
/// ok/true verdict, 1 for a counterexample or false verdict, 2 for usage
/// errors and refused (capped) computations.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separation automata laboratory for parity games", "seplab"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "output format: json, csv or dot")->check(CLI::IsMember({"json", "csv", "dot"}));
  app.add_option("--jobs", g.jobs, "worker threads (results do not depend on it)")->check(CLI::Range(1, 256));
  app.add_option("--seed", g.seed, "seed for randomized suites");
  app.add_option("--caps", g.caps_text, "enumeration caps, e.g. nodes=4,states=3 (overrides SEPLAB_CAPS)");

  std::function<Report()> action;

  std::string graph_file;
  int classify_n = 0, classify_d = 0;
  auto* classify = app.add_subcommand("classify", "classify a game graph, or count graphs per parity");
  classify->add_option("--graph", graph_file, "graph JSON file");
  classify->add_option("--n", classify_n);
  classify->add_option("--d", classify_d);
  classify->callback([&] { action = [&] { return cmd_classify(g, graph_file, classify_n, classify_d); }; });

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check an automaton against every graph on [n]");
  verify_args.source.attach(verify);
  verify->add_option("--n", verify_args.n);
  verify->add_option("--d", verify_args.d);
  verify->add_option("--time", verify_args.time, "time bound t (omit for unrestricted separation)");
  verify->add_option("--start-node", verify_args.start_node, "only plays starting at this node");
  verify->add_flag("--derive", verify_args.derive, "compute the least time bound instead");
  verify->callback([&] { action = [&] { return cmd_verify(g, verify_args); }; });

  RefuteArgs refute_args;
  auto* refute = app.add_subcommand("refute", "counterexample for an automaton with at most n states");
  refute_args.source.attach(refute);
  refute->add_option("--n", refute_args.n);
  refute->add_flag("--all", refute_args.all, "refute every canonical automaton up to --states");
  refute->add_option("--states", refute_args.states);
  refute->callback([&] { action = [&] { return cmd_refute(g, refute_args); }; });

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "solve a parity arena");
  solve->add_option("--arena", solve_args.arena_file);
  solve_args.source.attach(solve);
  solve->add_option("--via", solve_args.via)->check(CLI::IsMember({"separator", "direct"}));
  solve->add_flag("--trust", solve_args.trust, "skip verifying the separator first");
  solve->callback([&] { action = [&] { return cmd_solve(g, solve_args); }; });

  FoolArgs fool_args;
  auto* fool = app.add_subcommand("fool", "search for, or check, a fooling certificate");
  fool_args.source.attach(fool);
  fool->add_option("--n", fool_args.n);
  fool->add_option("--t", fool_args.t);
  fool->add_flag("--structured", fool_args.structured, "block-wise construction instead of exhaustive search");
  fool->add_option("--check", fool_args.check_file, "certificate JSON to re-check");
  fool->add_option("--out", fool_args.out_file, "write the certificate here");
  fool->callback([&] { action = [&] { return cmd_fool(g, fool_args); }; });

  ExtremalArgs ext_args;
  std::string ext_op;
  auto* extremal = app.add_subcommand("extremal", "set-family operations and sweeps");
  extremal->add_option("op", ext_op, "shift | compress | fi-check | bound | maxprod | prob")->required();
  extremal->add_option("--n", ext_args.n);
  extremal->add_option("--a", ext_args.a);
  extremal->add_option("--t", ext_args.t);
  extremal->add_option("--i", ext_args.i);
  extremal->add_option("--j", ext_args.j);
  extremal->add_option("--family", ext_args.family_file);
  extremal->add_option("--g", ext_args.g_file);
  extremal->add_option("--random", ext_args.random, "run the seeded random shifting suite with this many cases");
  extremal->callback([&] { action = [&] { return cmd_extremal(g, ext_op, ext_args); }; });

  CommArgs comm_args;
  std::string comm_op;
  auto* comm = app.add_subcommand("comm", "DISJ' instances, covers and bounds");
  comm->add_option("op", comm_op, "gen | check | mincover | bound | A")->required();
  comm->add_option("--n", comm_args.n);
  comm->add_option("--k", comm_args.k);
  comm->add_option("--a", comm_args.a);
  comm->add_option("--t", comm_args.t);
  comm->add_option("--gamma", comm_args.gamma);
  comm->add_option("--set", comm_args.set)->check(CLI::IsMember({"D", "I"}));
  comm->add_option("--cert", comm_args.cert_file);
  comm->add_option("--out", comm_args.out_file);
  comm->callback([&] { action = [&] { return cmd_comm(g, comm_op, comm_args, err); }; });

  std::string bounds_n, bounds_t;
  auto* bounds = app.add_subcommand("bounds", "replay the parameter inequalities exactly");
  bounds->add_option("--n", bounds_n);
  bounds->add_option("--t", bounds_t);
  bounds->callback([&] { action = [&] { return cmd_bounds(bounds_n, bounds_t); }; });

  int params_n = 0, params_t = 0;
  auto* params = app.add_subcommand("params", "derived parameters n', k, gamma, a, log2 Q");
  params->add_option("--n", params_n)->required();
  params->add_option("--t", params_t)->required();
  params->callback([&] { action = [&] { return cmd_params(params_n, params_t); }; });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    g.caps = Caps::from_environment();
    if (!g.caps_text.empty()) g.caps = Caps::parse(g.caps_text, g.caps);
    Report report = action();
    detail::emit(report, g.format, out);
    return report.status;
  } catch (const CapExceeded& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace seplab::cli
