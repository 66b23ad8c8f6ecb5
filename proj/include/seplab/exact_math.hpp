#pragma once

#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "seplab/common.hpp"

namespace seplab {

/// 50 decimal digits; used for every closed form.
using Float = boost::multiprecision::cpp_bin_float_50;

inline Float to_float(const Rational& r) {
  return Float(numerator(r)) / Float(denominator(r));
}

/// Parses "3", "-0.25", "1e-3" or "3/10" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(num, den);
  }
  int exponent = 0;
  auto e = s.find_first_of("eE");
  if (e != std::string::npos) {
    exponent = std::stoi(s.substr(e + 1));
    s = s.substr(0, e);
  }
  bool negative = !s.empty() && s[0] == '-';
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) s = s.substr(1);
  auto dot = s.find('.');
  std::string digits = s;
  if (dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    exponent -= static_cast<int>(s.size() - dot - 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  BigInt value(digits);
  Rational r(value);
  if (exponent > 0) r *= Rational(pow(BigInt(10), static_cast<unsigned>(exponent)));
  if (exponent < 0) r /= Rational(pow(BigInt(10), static_cast<unsigned>(-exponent)));
  return negative ? -r : r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline Rational rational_pow(const Rational& base, int exponent) {
  Rational r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

namespace detail {

inline Rational dyadic_floor(const Rational& x, unsigned bits) {
  BigInt scale = BigInt(1) << bits;
  BigInt num = numerator(x) * scale;
  BigInt den = denominator(x);
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return Rational(q, scale);
}

inline Rational dyadic_ceil(const Rational& x, unsigned bits) { return -dyadic_floor(-x, bits); }

}  // namespace detail

/// Rigorous rational enclosure lo <= exp(x) <= hi. The argument is halved
/// until |y| <= 1/2, exp(y) is bracketed by a Taylor sum plus a remainder
/// bound 3|y|^(N+1)/(N+1)!, and the bracket is squared back up with outward
/// rounding to a 2^-256 grid.
inline std::pair<Rational, Rational> exp_bounds(const Rational& x) {
  constexpr unsigned kBits = 256;
  constexpr int kTerms = 40;
  int halvings = 0;
  Rational y = x;
  while (abs(y) > Rational(1, 2)) {
    y /= 2;
    ++halvings;
  }
  Rational sum = 0, term = 1;
  for (int i = 0; i <= kTerms; ++i) {
    sum += term;
    term = term * y / (i + 1);
  }
  Rational rest = 3 * abs(term);  // term == y^(N+1)/(N+1)!
  Rational lo = detail::dyadic_floor(sum - rest, kBits), hi = detail::dyadic_ceil(sum + rest, kBits);
  for (int i = 0; i < halvings; ++i) {
    lo = detail::dyadic_floor(lo * lo, kBits);
    hi = detail::dyadic_ceil(hi * hi, kBits);
  }
  return {lo, hi};
}

}  // namespace seplab
