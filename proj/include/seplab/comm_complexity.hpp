#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "seplab/common.hpp"
#include "seplab/exact_math.hpp"
#include "seplab/extremal_families.hpp"

namespace seplab {

/// Promise problem on k-tuples of floor(n/k)-subsets of [n]: output 1 on
/// pairwise disjoint tuples (D), 0 on tuples whose members pairwise differ
/// in at most gamma*a elements (I).
struct DisjPrimeInstance {
  int n = 0;
  int k = 0;
  Rational gamma;

  int a() const { return k > 0 ? n / k : 0; }
  bool degenerate() const { return a() == 0; }

  void validate() const {
    if (n < 2 || k < 2 || k > n) throw std::invalid_argument(detail::concat("need 2 <= k <= n, got n=", n, ", k=", k));
    if (gamma <= 0 || gamma >= 1) throw std::invalid_argument("gamma must lie strictly between 0 and 1");
  }
};

enum class DisjValue : std::uint8_t { Zero, One, Undefined };

inline std::string_view to_string(DisjValue v) {
  return v == DisjValue::One ? "1" : v == DisjValue::Zero ? "0" : "undefined";
}

namespace detail {

inline bool pairwise_disjoint(const std::vector<Subset>& tuple) {
  std::set<int> seen;
  for (const auto& x : tuple)
    for (int v : x)
      if (!seen.insert(v).second) return false;
  return true;
}

/// k * |Y_i ^ Y_i'| compared against gamma * a without rounding.
inline bool pairwise_close(const std::vector<Subset>& tuple, const Rational& gamma, int a) {
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      auto diff = tuple[i].size() + tuple[j].size() - 2 * static_cast<std::size_t>(intersection_size(tuple[i], tuple[j]));
      if (Rational(static_cast<long long>(diff)) > gamma * a) return false;
    }
  return true;
}

}  // namespace detail

/// 1 on D, 0 on I, Undefined off the promise. With a = 0 the two sets
/// coincide and the value is Undefined.
inline DisjValue disj_value(const DisjPrimeInstance& inst, const std::vector<Subset>& tuple) {
  const int a = inst.a();
  if (static_cast<int>(tuple.size()) != inst.k) throw std::invalid_argument("tuple must have k sets");
  for (const auto& x : tuple) {
    if (static_cast<int>(x.size()) != a) throw std::invalid_argument(detail::concat("tuple member must have ", a, " elements"));
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < 1 || x[i] > inst.n || (i > 0 && x[i - 1] >= x[i]))
        throw std::invalid_argument("tuple member must be a sorted subset of [n]");
  }
  if (a == 0) return DisjValue::Undefined;
  if (detail::pairwise_disjoint(tuple)) return DisjValue::One;
  if (detail::pairwise_close(tuple, inst.gamma, a)) return DisjValue::Zero;
  return DisjValue::Undefined;
}

namespace detail {

inline void check_tuple_cap(const DisjPrimeInstance& inst, const Caps& caps) {
  auto per = binomial_u64(inst.n, inst.a());
  auto total = detail::checked_pow(per, static_cast<std::uint64_t>(inst.k));
  if (total > caps.max_tuples)
    detail::refuse(detail::concat("C(", inst.n, ",", inst.a(), ")^", inst.k, " tuples exceed cap ", caps.max_tuples));
}

/// Lexicographic DFS over k-tuples; `admit(prefix, next)` prunes.
template <typename Admit>
std::vector<std::vector<Subset>> tuples(const DisjPrimeInstance& inst, Admit admit) {
  auto universe = all_subsets(inst.n, inst.a());
  std::vector<std::vector<Subset>> out;
  std::vector<Subset> prefix;
  std::function<void()> extend = [&] {
    if (static_cast<int>(prefix.size()) == inst.k) {
      out.push_back(prefix);
      return;
    }
    for (const auto& x : universe) {
      if (!admit(prefix, x)) continue;
      prefix.push_back(x);
      extend();
      prefix.pop_back();
    }
  };
  extend();
  return out;
}

}  // namespace detail

/// All pairwise disjoint tuples, lexicographic.
inline std::vector<std::vector<Subset>> gen_D(const DisjPrimeInstance& inst, const Caps& caps = {}) {
  inst.validate();
  detail::check_tuple_cap(inst, caps);
  return detail::tuples(inst, [](const std::vector<Subset>& prefix, const Subset& x) {
    for (const auto& y : prefix)
      if (intersection_size(x, y) > 0) return false;
    return true;
  });
}

/// All pairwise close tuples, lexicographic.
inline std::vector<std::vector<Subset>> gen_I(const DisjPrimeInstance& inst, const Caps& caps = {}) {
  inst.validate();
  detail::check_tuple_cap(inst, caps);
  const int a = inst.a();
  return detail::tuples(inst, [&](const std::vector<Subset>& prefix, const Subset& x) {
    for (const auto& y : prefix) {
      auto diff = 2 * (a - intersection_size(x, y));
      if (Rational(diff) > inst.gamma * a) return false;
    }
    return true;
  });
}

/// C(n,a) C(n-a,a) ... C(n-(k-1)a, a).
inline BigInt size_of_D(int n, int k) {
  int a = n / k;
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r *= binomial(n - i * a, a);
  return r;
}

/// F_1 x ... x F_k over a-subsets of [n].
struct Box {
  std::vector<SetFamily> factors;

  bool contains(const std::vector<Subset>& tuple) const {
    if (tuple.size() != factors.size()) return false;
    for (std::size_t i = 0; i < tuple.size(); ++i)
      if (!factors[i].contains(tuple[i])) return false;
    return true;
  }
};

struct CoverCertificate {
  DisjPrimeInstance instance;
  std::vector<Box> boxes;
};

/// Every member of D lies in some box and no box holds a member of I.
inline bool check_cover(const CoverCertificate& cert, const Caps& caps = {}) {
  for (const auto& box : cert.boxes)
    if (static_cast<int>(box.factors.size()) != cert.instance.k) return false;
  for (const auto& x : gen_D(cert.instance, caps))
    if (std::none_of(cert.boxes.begin(), cert.boxes.end(), [&](const Box& b) { return b.contains(x); })) return false;
  for (const auto& y : gen_I(cert.instance, caps))
    for (const auto& b : cert.boxes)
      if (b.contains(y)) return false;
  return true;
}

struct MinCover {
  int size = 0;
  std::vector<Box> boxes;
};

/// Exact minimum number of I-avoiding boxes covering D. A set S of D-tuples
/// fits in one such box iff its coordinate-wise hull (the smallest box
/// containing it) avoids I; the optimum is a set-cover DP over subsets of D.
inline MinCover min_cover_bruteforce(const DisjPrimeInstance& inst, const Caps& caps = {}) {
  auto d = gen_D(inst, caps);
  auto i_tuples = gen_I(inst, caps);
  if (d.size() > caps.max_cover_domain || d.size() > 20)
    detail::refuse(detail::concat("|D| = ", d.size(), " exceeds cover cap ", caps.max_cover_domain));
  const int m = static_cast<int>(d.size());
  const std::uint32_t full = (1u << m) - 1;
  auto hull = [&](std::uint32_t mask) {
    Box b;
    for (int c = 0; c < inst.k; ++c) {
      std::vector<Subset> members;
      for (int j = 0; j < m; ++j)
        if (mask >> j & 1u) members.push_back(d[j][c]);
      b.factors.emplace_back(inst.n, inst.a(), std::move(members));
    }
    return b;
  };
  std::vector<bool> feasible(std::size_t(1) << m, false);
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    auto b = hull(mask);
    feasible[mask] = std::none_of(i_tuples.begin(), i_tuples.end(), [&](const auto& y) { return b.contains(y); });
    if (mask == full) break;
  }
  constexpr int kInf = 1 << 20;
  std::vector<int> best(std::size_t(1) << m, kInf);
  std::vector<std::uint32_t> choice(std::size_t(1) << m, 0);
  best[0] = 0;
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    std::uint32_t low = mask & (~mask + 1);
    std::uint32_t rest = mask ^ low;
    // Parts containing the lowest remaining tuple: low | any submask of rest.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      std::uint32_t part = sub | low;
      if (feasible[part] && best[mask ^ part] + 1 < best[mask]) {
        best[mask] = best[mask ^ part] + 1;
        choice[mask] = part;
      }
      if (sub == 0) break;
    }
    if (mask == full) break;
  }
  MinCover r;
  if (m == 0) return r;
  if (best[full] >= kInf) throw std::logic_error("D cannot be covered; D and I overlap");
  r.size = best[full];
  for (std::uint32_t mask = full; mask; mask ^= choice[mask]) r.boxes.push_back(hull(choice[mask]));
  return r;
}

/// gamma^2 n / (10^4 k) - 2 log2 n, when 2 <= k <= n-1 and k/gamma <= sqrt(n)/100.
inline std::optional<Float> thm4_lower_bound(const BigInt& n, int k, const Rational& gamma) {
  if (k < 2 || BigInt(k) > n - 1 || gamma <= 0) return std::nullopt;
  Rational ratio = Rational(100 * k) / gamma;  // applicability: ratio^2 <= n
  if (ratio * ratio > Rational(n)) return std::nullopt;
  Float fn = Float(n);
  return to_float(gamma * gamma) * fn / (Float(10000) * k) - 2 * log2(fn);
}

/// 2^(k-2) sqrt(32 a (n-a)) exp(-(a-t-1)^2/(40a)) C(n,a) + 2^(k-2).
inline Float lemma9_threshold(int n, int a, int t, int k) {
  detail::check_tan(n, a, t);
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  Float scale = pow(Float(2), k - 2);
  return scale * sqrt(Float(32 * a * (n - a))) * exp(to_float(detail::gap_exponent(a, t, 40))) * Float(binomial(n, a)) + scale;
}

/// floor(sqrt(32 a (n-a)) exp(-(a-t-1)^2/(40a)) C(n,a)) + 1, the k = 2 bound.
inline BigInt a2_upper_bound(int n, int a, int t) {
  Float v = lemma9_threshold(n, a, t, 2) - 1;
  return BigInt(floor(v)) + 1;
}

/// Least N such that any k families in C([n],a), each of size >= N, admit
/// F_1, ..., F_k with |F_1 & F_i| >= t+1 for all i >= 2.
///
/// A tuple without such a choice is "bad". Given F_2..F_k the largest bad
/// F_1 is the set of all X lacking a (t+1)-neighbour in some F_i, so
/// A = 1 + max over F_2 <= ... <= F_k (as bitmasks; the condition is
/// symmetric in them) of min(|F_1*|, |F_2|, ..., |F_k|).
inline BigInt A_bruteforce(int n, int a, int t, int k, const Caps& caps = {}) {
  detail::check_tan(n, a, t);
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  auto universe = all_subsets(n, a);
  const int size = static_cast<int>(universe.size());
  auto tuples = detail::checked_pow(std::uint64_t(1) << std::min(size, 63), static_cast<std::uint64_t>(k - 1));
  if (size > 24 || tuples > caps.max_family_tuples)
    detail::refuse(detail::concat("(2^", size, ")^", k - 1, " family tuples exceed cap ", caps.max_family_tuples));
  std::vector<std::uint32_t> near(size, 0);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      if (intersection_size(universe[i], universe[j]) >= t + 1) near[i] |= 1u << j;
  const std::uint32_t count = 1u << size;
  std::vector<std::uint32_t> reach(count, 0);  // union of neighbourhoods
  for (std::uint32_t mask = 1; mask < count; ++mask)
    reach[mask] = reach[mask & (mask - 1)] | near[__builtin_ctz(mask)];
  const std::uint32_t all = count - 1;
  int best = 0;
  std::vector<std::uint32_t> chosen;
  std::function<void(std::uint32_t, std::uint32_t, int)> extend = [&](std::uint32_t from, std::uint32_t common, int smallest) {
    if (static_cast<int>(chosen.size()) == k - 1) {
      int f1 = __builtin_popcount(all & ~common);
      best = std::max(best, std::min(f1, smallest));
      return;
    }
    for (std::uint32_t mask = from; mask < count; ++mask) {
      int sz = __builtin_popcount(mask);
      if (std::min(sz, smallest) <= best) continue;  // cannot improve
      chosen.push_back(mask);
      extend(mask, common & reach[mask], std::min(smallest, sz));
      chosen.pop_back();
    }
  };
  extend(1, all, size);
  return BigInt(best + 1);
}

}  // namespace seplab
