#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "seplab/common.hpp"
#include "seplab/exact_math.hpp"

namespace seplab {

/// Sorted list of distinct elements of [n].
using Subset = std::vector<int>;

/// A family of a-element subsets of [n], kept sorted and duplicate-free.
struct SetFamily {
  int n = 0;
  int a = 0;
  std::vector<Subset> members;

  SetFamily() = default;
  SetFamily(int n_, int a_, std::vector<Subset> sets = {}) : n(n_), a(a_), members(std::move(sets)) { normalize(); }

  void normalize() {
    for (auto& s : members) std::sort(s.begin(), s.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }

  void validate() const {
    if (n < 0 || a < 0 || a > n) throw ValidationError(detail::concat("bad family shape n=", n, ", a=", a));
    for (const auto& s : members) {
      if (static_cast<int>(s.size()) != a) throw ValidationError("family member of the wrong size");
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] < 1 || s[i] > n || (i > 0 && s[i - 1] >= s[i])) throw ValidationError("family member outside [n]");
    }
  }

  bool contains(const Subset& s) const { return std::binary_search(members.begin(), members.end(), s); }
  std::size_t size() const { return members.size(); }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;
};

/// All a-subsets of [n] in lexicographic order.
inline std::vector<Subset> all_subsets(int n, int a) {
  std::vector<Subset> out;
  detail::for_each_combination(detail::iota_vector(1, n), a, [&](const Subset& s) {
    out.push_back(s);
    return false;
  });
  return out;
}

inline int intersection_size(const Subset& x, const Subset& y) {
  int count = 0;
  for (std::size_t i = 0, j = 0; i < x.size() && j < y.size();) {
    if (x[i] == y[j]) ++count, ++i, ++j;
    else if (x[i] < y[j]) ++i;
    else ++j;
  }
  return count;
}

/// s_ij: replace j by i when j is present and i is not.
inline Subset shift_set(const Subset& x, int i, int j) {
  bool has_j = std::binary_search(x.begin(), x.end(), j), has_i = std::binary_search(x.begin(), x.end(), i);
  if (!has_j || has_i) return x;
  Subset out;
  for (int v : x)
    if (v != j) out.push_back(v);
  out.insert(std::upper_bound(out.begin(), out.end(), i), i);
  return out;
}

/// S_ij: shift every member whose image is not already in the family.
inline SetFamily shift_family(const SetFamily& f, int i, int j) {
  std::vector<Subset> out;
  for (const auto& x : f.members) {
    auto y = shift_set(x, i, j);
    out.push_back(f.contains(y) ? x : y);
  }
  return SetFamily(f.n, f.a, std::move(out));
}

inline bool are_t_far(const SetFamily& f, const SetFamily& g, int t) {
  for (const auto& x : f.members)
    for (const auto& y : g.members)
      if (intersection_size(x, y) > t) return false;
  return true;
}

inline bool is_left_compressed(const SetFamily& f) {
  for (int i = 1; i <= f.n; ++i)
    for (int j = i + 1; j <= f.n; ++j)
      if (!(shift_family(f, i, j) == f)) return false;
  return true;
}

/// Sum of all elements of all members; every effective S_ij with i < j
/// lowers it.
inline std::int64_t shift_potential(const SetFamily& f) {
  std::int64_t total = 0;
  for (const auto& x : f.members)
    for (int v : x) total += v;
  return total;
}

struct CompressionResult {
  SetFamily f;
  SetFamily g;
  std::vector<std::int64_t> potentials;  // potential of F before each step and at the end
  std::vector<std::pair<int, int>> steps;  // the (i, j) applied, in order
};

/// Applies S_ij to F and S_ji to G for the least i < j that moves F, until F
/// is left-compressed.
inline CompressionResult compress_pair(const SetFamily& f, const SetFamily& g) {
  CompressionResult r{f, g, {shift_potential(f)}, {}};
  for (;;) {
    bool moved = false;
    for (int i = 1; i <= r.f.n && !moved; ++i)
      for (int j = i + 1; j <= r.f.n && !moved; ++j) {
        auto next = shift_family(r.f, i, j);
        if (next == r.f) continue;
        r.f = std::move(next);
        r.g = shift_family(r.g, j, i);
        r.steps.push_back({i, j});
        r.potentials.push_back(shift_potential(r.f));
        moved = true;
      }
    if (!moved) return r;
  }
}

/// Componentwise order on equal-size sorted sets: the i-th smallest element
/// of X is at most the i-th smallest element of Y for every i.
inline bool leftof(const Subset& x, const Subset& y) {
  if (x.size() != y.size()) throw std::invalid_argument("leftof needs sets of equal size");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

/// Downward closed under leftof within C([n], a).
inline bool is_ideal(const SetFamily& f) {
  auto universe = all_subsets(f.n, f.a);
  for (const auto& y : f.members)
    for (const auto& x : universe)
      if (leftof(x, y) && !f.contains(x)) return false;
  return true;
}

/// Calls fn(ideal) for every ideal of leftof on C([n], a), the empty one
/// first. Sets are decided in lexicographic order, which extends leftof,
/// so a set may join only when everything below it already has.
template <typename Fn>
void for_each_ideal(int n, int a, Fn&& fn, const Caps& caps = {}) {
  auto universe = all_subsets(n, a);
  if (universe.size() > caps.max_family_universe)
    detail::refuse(detail::concat("C(", n, ",", a, ") = ", universe.size(), " exceeds family cap ", caps.max_family_universe));
  const int size = static_cast<int>(universe.size());
  std::vector<std::vector<int>> below(size);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < y; ++x)
      if (leftof(universe[x], universe[y])) below[y].push_back(x);
  std::vector<bool> in(size, false);
  std::function<void(int)> decide = [&](int i) {
    if (i == size) {
      std::vector<Subset> members;
      for (int j = 0; j < size; ++j)
        if (in[j]) members.push_back(universe[j]);
      fn(SetFamily(n, a, std::move(members)));
      return;
    }
    decide(i + 1);
    if (std::all_of(below[i].begin(), below[i].end(), [&](int x) { return in[x]; })) {
      in[i] = true;
      decide(i + 1);
      in[i] = false;
    }
  };
  decide(0);
}

/// (j smallest, j largest) elements of X.
inline std::pair<Subset, Subset> borders(const Subset& x, int j) {
  if (j < 1 || j > static_cast<int>(x.size()))
    throw std::out_of_range(detail::concat("border size ", j, " outside [1,", x.size(), "]"));
  return {Subset(x.begin(), x.begin() + j), Subset(x.end() - j, x.end())};
}

/// No G in g has its t+1 smallest elements leftof the t+1 largest of an F in f.
inline bool fi_condition(const SetFamily& f, const SetFamily& g, int t) {
  if (t < 0 || t + 1 > f.a) throw std::invalid_argument("fi_condition needs 0 <= t < a");
  for (const auto& x : f.members)
    for (const auto& y : g.members)
      if (leftof(borders(y, t + 1).first, borders(x, t + 1).second)) return false;
  return true;
}

namespace detail {

inline void check_tan(int n, int a, int t) {
  if (!(0 <= t && t < a && a < n)) throw std::invalid_argument(detail::concat("need 0 <= t < a < n, got n=", n, ", a=", a, ", t=", t));
}

/// The exponent -(a-t-1)^2 / (c*a) as an exact rational.
inline Rational gap_exponent(int a, int t, int c) {
  Rational s = a - t - 1;
  return -s * s / Rational(c * a);
}

}  // namespace detail

/// 32 a (n-a) exp(-(a-t-1)^2/(20a)) C(n,a)^2.
inline Float theorem3_bound(int n, int a, int t) {
  detail::check_tan(n, a, t);
  Float c = Float(binomial(n, a));
  return 32 * Float(a) * Float(n - a) * exp(to_float(detail::gap_exponent(a, t, 20))) * c * c;
}

/// Rational lower bound on theorem3_bound, for exact comparisons.
inline Rational theorem3_bound_lower(int n, int a, int t) {
  detail::check_tan(n, a, t);
  BigInt c = binomial(n, a);
  return Rational(32 * a * (n - a)) * exp_bounds(detail::gap_exponent(a, t, 20)).first * Rational(c * c);
}

struct MaxProduct {
  BigInt value;
  SetFamily f;
  SetFamily g;
};

/// Exact max |F| |G| over t-far pairs. For each F the best partner is the
/// family of all sets meeting every member of F in at most t elements;
/// these partners are built incrementally over all 2^C(n,a) choices of F.
inline MaxProduct max_product_bruteforce(int n, int a, int t, const Caps& caps = {}) {
  detail::check_tan(n, a, t);
  auto universe = all_subsets(n, a);
  const std::size_t size = universe.size();
  if (size > caps.max_family_universe || size > 26)
    detail::refuse(detail::concat("C(", n, ",", a, ") = ", size, " exceeds family cap ", caps.max_family_universe));
  std::vector<std::uint32_t> compatible(size, 0);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (intersection_size(universe[i], universe[j]) <= t) compatible[i] |= 1u << j;
  const std::uint32_t all = size == 32 ? ~0u : (1u << size) - 1;
  std::vector<std::uint32_t> partner(std::size_t(1) << size);
  partner[0] = all;
  std::uint64_t best = 0;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask <= all && mask != 0; ++mask) {
    int low = __builtin_ctz(mask);
    partner[mask] = partner[mask & (mask - 1)] & compatible[low];
    std::uint64_t value = static_cast<std::uint64_t>(__builtin_popcount(mask)) * __builtin_popcount(partner[mask]);
    if (value > best) {
      best = value;
      best_mask = mask;
    }
    if (mask == all) break;
  }
  auto pick = [&](std::uint32_t bits) {
    std::vector<Subset> members;
    for (std::size_t i = 0; i < size; ++i)
      if (bits >> i & 1u) members.push_back(universe[i]);
    return SetFamily(n, a, std::move(members));
  };
  return {BigInt(best), pick(best_mask), pick(partner[best_mask])};
}

/// mu_p(F) = |F| p^a (1-p)^(n-a), exactly.
inline Rational mu_prob(const SetFamily& f, const Rational& p) {
  if (p < 0 || p > 1) throw std::domain_error("probability outside [0,1]");
  return Rational(static_cast<long long>(f.size())) * rational_pow(p, f.a) * rational_pow(1 - p, f.n - f.a);
}

/// 4n exp(-(a-t-1)^2/(20a)).
inline Float prob_bound_rhs(int n, int a, int t) {
  if (!(0 <= t && t < a)) throw std::invalid_argument("need 0 <= t < a");
  return 4 * Float(n) * exp(to_float(detail::gap_exponent(a, t, 20)));
}

inline Rational prob_bound_rhs_lower(int n, int a, int t) {
  if (!(0 <= t && t < a)) throw std::invalid_argument("need 0 <= t < a");
  return Rational(4 * n) * exp_bounds(detail::gap_exponent(a, t, 20)).first;
}

struct KlTopsoe {
  Float kl;
  Float topsoe_rhs;
};

/// D(x||y) = x ln(x/y) + (1-x) ln((1-x)/(1-y)) with 0 ln 0 = 0, and the
/// lower bound (x-y)^2 / (2(x+y)).
inline KlTopsoe kl_and_topsoe(const Rational& x, const Rational& y) {
  if (y <= 0 || y >= 1) throw std::domain_error("y must lie strictly between 0 and 1");
  if (x < 0 || x > 1) throw std::domain_error("x must lie in [0,1]");
  Float fx = to_float(x), fy = to_float(y);
  Float kl = 0;
  if (x > 0) kl += fx * log(fx / fy);
  if (x < 1) kl += (1 - fx) * log((1 - fx) / (1 - fy));
  Float d = fx - fy;
  return {kl, d * d / (2 * (fx + fy))};
}

struct ChernoffCheck {
  Float bound;
  Rational bound_lower;  // rational lower bound on `bound`
  Rational exact;
};

/// 2 exp(-eps^2 l / (4p + 2 eps)) against the exact probability that a
/// Binomial(l, p) count falls outside [(p - eps) l, (p + eps) l].
inline ChernoffCheck chernoff_two_sided(int l, const Rational& p, const Rational& eps) {
  if (l < 1) throw std::invalid_argument("l must be >= 1");
  if (eps < 0) throw std::invalid_argument("eps must be >= 0");
  if (p < 0 || p > 1) throw std::domain_error("probability outside [0,1]");
  ChernoffCheck r;
  Rational denom = 4 * p + 2 * eps;
  Rational exponent = denom == 0 ? Rational(0) : -eps * eps * l / denom;
  r.bound = 2 * exp(to_float(exponent));
  r.bound_lower = 2 * exp_bounds(exponent).first;
  Rational lo = (p - eps) * l, hi = (p + eps) * l;
  r.exact = 0;
  for (int j = 0; j <= l; ++j)
    if (Rational(j) < lo || Rational(j) > hi)
      r.exact += Rational(binomial(l, j)) * rational_pow(p, j) * rational_pow(1 - p, l - j);
  return r;
}

/// sqrt(1/(8n (a/n)((n-a)/n))) (n/a)^a (n/(n-a))^(n-a).
inline Float binom_lower_bound(int n, int a) {
  if (!(0 < a && a < n)) throw std::invalid_argument("need 0 < a < n");
  Float fn = n, fa = a, fb = n - a;
  return sqrt(1 / (8 * fn * (fa / fn) * (fb / fn))) * pow(fn / fa, a) * pow(fn / fb, n - a);
}

/// Largest family G with fi_condition(F, G, t), i.e. every set whose t+1
/// smallest elements are not leftof the t+1 largest of any member of F.
inline SetFamily fi_partner(const SetFamily& f, int t) {
  std::vector<Subset> members;
  for (const auto& y : all_subsets(f.n, f.a))
    if (fi_condition(f, SetFamily(f.n, f.a, {y}), t)) members.push_back(y);
  return SetFamily(f.n, f.a, std::move(members));
}

struct SweepResult {
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
};

/// For every t < a, every ideal F and every single set G: F and {G} are
/// t-far exactly when fi_condition holds.
inline SweepResult check_fi_equivalence(int n, int a, std::optional<int> only_t = std::nullopt, const Caps& caps = {}) {
  if (!(1 <= a && a <= n)) throw std::invalid_argument("need 1 <= a <= n");
  SweepResult r;
  auto universe = all_subsets(n, a);
  for (int t = 0; t < a; ++t) {
    if (only_t && *only_t != t) continue;
    for_each_ideal(n, a, [&](const SetFamily& f) {
      for (const auto& y : universe) {
        SetFamily g(n, a, {y});
        ++r.cases;
        if (are_t_far(f, g, t) != fi_condition(f, g, t)) ++r.violations;
      }
    }, caps);
  }
  return r;
}

struct ProbLemmaResult {
  SweepResult sweep;
  Rational max_lhs;    // largest mu(F) mu(G) seen
  Rational rhs_lower;  // rational lower bound on 4n exp(-(a-t-1)^2/(20a))
};

/// For each ideal F with its largest fi-partner G, compares
/// mu_{a/n}(F) mu_{a/n}(G) exactly against a lower bound on the right side.
inline ProbLemmaResult check_prob_lemma(int n, int a, int t, const Caps& caps = {}) {
  detail::check_tan(n, a, t);
  ProbLemmaResult r{{}, 0, prob_bound_rhs_lower(n, a, t)};
  Rational p(a, n);
  for_each_ideal(n, a, [&](const SetFamily& f) {
    auto g = fi_partner(f, t);
    Rational lhs = mu_prob(f, p) * mu_prob(g, p);
    ++r.sweep.cases;
    if (lhs > r.max_lhs) r.max_lhs = lhs;
    if (lhs > r.rhs_lower) ++r.sweep.violations;
  }, caps);
  return r;
}

/// Random a-subset of [n] (partial Fisher-Yates); rng is any 64-bit engine.
template <typename Rng>
Subset random_subset(Rng& rng, int n, int a) {
  auto pool = detail::iota_vector(1, n);
  for (int i = 0; i < a; ++i) std::swap(pool[i], pool[i + static_cast<int>(rng() % static_cast<std::uint64_t>(n - i))]);
  Subset out(pool.begin(), pool.begin() + a);
  std::sort(out.begin(), out.end());
  return out;
}

template <typename Rng>
SetFamily random_family(Rng& rng, int n, int a, int max_members) {
  std::vector<Subset> members;
  int count = static_cast<int>(rng() % static_cast<std::uint64_t>(max_members + 1));
  for (int i = 0; i < count; ++i) members.push_back(random_subset(rng, n, a));
  return SetFamily(n, a, std::move(members));
}

struct ShiftSuiteResult {
  int cases = 0;
  int far_violations = 0;       // S_ij(F), S_ji(G) no longer t-far
  int size_violations = 0;      // a shift or the compression changed a size
  int compress_violations = 0;  // output not left-compressed, potential not decreasing, or farness lost
};

/// Seeded random shifting suite. Each case draws n in [3,7], a in [1,n-1],
/// t in [0,a-1], a family F and a family G filtered to be t-far from F,
/// and i < j; then checks one shift pair and a full compression.
inline ShiftSuiteResult run_shift_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  ShiftSuiteResult r;
  for (int c = 0; c < count; ++c) {
    int n = 3 + static_cast<int>(rng() % 5);
    int a = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    int t = static_cast<int>(rng() % static_cast<std::uint64_t>(a));
    auto f = random_family(rng, n, a, 6);
    auto g0 = random_family(rng, n, a, 6);
    std::vector<Subset> kept;
    for (const auto& y : g0.members)
      if (are_t_far(f, SetFamily(n, a, {y}), t)) kept.push_back(y);
    SetFamily g(n, a, std::move(kept));
    int i = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    int j = i + 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - i));
    ++r.cases;
    auto fs = shift_family(f, i, j), gs = shift_family(g, j, i);
    if (!are_t_far(fs, gs, t)) ++r.far_violations;
    if (fs.size() != f.size() || gs.size() != g.size()) ++r.size_violations;
    auto comp = compress_pair(f, g);
    bool ok = is_left_compressed(comp.f) && are_t_far(comp.f, comp.g, t);
    for (std::size_t s = 1; s < comp.potentials.size(); ++s) ok = ok && comp.potentials[s] < comp.potentials[s - 1];
    if (!ok) ++r.compress_violations;
    if (comp.f.size() != f.size() || comp.g.size() != g.size()) ++r.size_violations;
  }
  return r;
}

}  // namespace seplab
