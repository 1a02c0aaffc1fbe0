#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace balanced {

/// Lattice coordinates after scaling an instance to a common denominator.
using Coord = std::int64_t;
/// Products of two lattice quantities are always evaluated in this type.
using Wide = __int128;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Largest magnitude accepted for a scaled lattice coordinate.
inline constexpr Coord kCoordLimit = Coord{1} << 40;

inline int sign(Wide v) { return (v > 0) - (v < 0); }

inline Coord checked_add(Coord a, Coord b) {
  Coord out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("lattice coordinate overflow");
  return out;
}

inline Coord checked_sub(Coord a, Coord b) {
  Coord out;
  if (__builtin_sub_overflow(a, b, &out)) throw std::overflow_error("lattice coordinate overflow");
  return out;
}

/// Parses "7", "-3/4" or "0.125" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  auto parse_int = [&](std::string_view s, bool allow_sign) {
    if (s.empty()) throw fail();
    std::size_t i = 0;
    bool neg = false;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) {
      neg = s[0] == '-';
      ++i;
    }
    if (i == s.size()) throw fail();
    BigInt v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw fail();
      v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(text.substr(0, slash), true);
    BigInt den = parse_int(text.substr(slash + 1), false);
    if (den == 0) throw fail();
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty()) throw fail();
    BigInt w = whole.empty() ? BigInt(0) : parse_int(whole, false);
    BigInt f = frac.empty() ? BigInt(0) : parse_int(frac, false);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational value(w * scale + f, scale);
    return neg ? Rational(-value) : value;
  }
  return Rational(parse_int(text, true));
}

/// Canonical text form: "n" for integers, "p/q" in lowest terms otherwise.
inline std::string format_rational(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace balanced
