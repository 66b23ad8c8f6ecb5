#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace seplab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when a value violates a structural invariant (e.g. a node
/// without out-edges).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by derived-parameter computations that degenerate.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive routine refused to run because its input exceeds a cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Player : std::uint8_t { Even = 0, Odd = 1 };

inline Player opponent(Player p) { return p == Player::Even ? Player::Odd : Player::Even; }

inline std::string_view to_string(Player p) { return p == Player::Even ? "Player0" : "Player1"; }

/// Limits for every exhaustive enumeration in the library. Exceeding one
/// is always a refusal, never a silent truncation.
struct Caps {
  int max_nodes = 4;
  int max_priorities = 2;
  int max_automaton_states = 3;
  int max_alphabet = 6;
  int max_prefix_nodes = 6;
  std::uint64_t max_family_universe = 20;   // C(n,a) for family brute force
  std::uint64_t max_tuples = 1'000'000;     // C(n,a)^k for D/I generation
  std::uint64_t max_cover_domain = 12;      // |D| for exact min cover
  std::uint64_t max_family_tuples = 1u << 24;  // (2^C(n,a))^(k-1) for A^k
  std::uint64_t max_structured_tries = 10'000;

  /// Parses "key=value,key=value" (the SEPLAB_CAPS format).
  static Caps parse(std::string_view spec) { return parse(spec, Caps{}); }
  static Caps parse(std::string_view spec, Caps base) {
    std::size_t pos = 0;
    while (pos < spec.size()) {
      auto end = spec.find(',', pos);
      if (end == std::string_view::npos) end = spec.size();
      auto item = spec.substr(pos, end - pos);
      pos = end + 1;
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string_view::npos)
        throw std::invalid_argument("bad cap entry '" + std::string(item) + "'");
      auto key = item.substr(0, eq);
      auto value = std::stoull(std::string(item.substr(eq + 1)));
      if (key == "nodes") base.max_nodes = static_cast<int>(value);
      else if (key == "priorities") base.max_priorities = static_cast<int>(value);
      else if (key == "states") base.max_automaton_states = static_cast<int>(value);
      else if (key == "alphabet") base.max_alphabet = static_cast<int>(value);
      else if (key == "prefix_nodes") base.max_prefix_nodes = static_cast<int>(value);
      else if (key == "family_universe") base.max_family_universe = value;
      else if (key == "tuples") base.max_tuples = value;
      else if (key == "cover_domain") base.max_cover_domain = value;
      else if (key == "family_tuples") base.max_family_tuples = value;
      else if (key == "structured_tries") base.max_structured_tries = value;
      else throw std::invalid_argument("unknown cap '" + std::string(key) + "'");
    }
    return base;
  }

  static Caps from_environment() {
    const char* env = std::getenv("SEPLAB_CAPS");
    return env ? parse(env) : Caps{};
  }
};

namespace detail {

template <typename... Args>
std::string concat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

[[noreturn]] inline void refuse(const std::string& what) {
  throw CapExceeded("refused: " + what);
}

/// Saturating integer power, used to size enumerations before running them.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

/// Calls fn(subset) for each a-element subset of `pool` (taken in pool
/// order, so a sorted pool yields sorted subsets in lexicographic order).
/// Stops early and returns true once fn returns true.
template <typename Fn>
bool for_each_combination(const std::vector<int>& pool, int a, Fn&& fn) {
  if (a < 0 || a > static_cast<int>(pool.size())) return false;
  std::vector<int> pick(a);
  for (int i = 0; i < a; ++i) pick[i] = i;
  std::vector<int> subset(a);
  for (;;) {
    for (int i = 0; i < a; ++i) subset[i] = pool[pick[i]];
    if (fn(static_cast<const std::vector<int>&>(subset))) return true;
    int i = a - 1;
    while (i >= 0 && pick[i] == static_cast<int>(pool.size()) - a + i) --i;
    if (i < 0) return false;
    ++pick[i];
    for (int j = i + 1; j < a; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace detail

/// C(n, k), saturating at the uint64 maximum.
inline std::uint64_t binomial_u64(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

namespace detail {

inline std::vector<int> iota_vector(int first, int last) {
  std::vector<int> out;
  for (int x = first; x <= last; ++x) out.push_back(x);
  return out;
}

}  // namespace detail
}  // namespace seplab
