#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>

#include "errors.hpp"

namespace kdec {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Serialized form is always "p/q" in lowest terms with q > 0, even for
// integers ("3/1"). cpp_rational keeps values canonical, so numerator and
// denominator can be emitted directly.
inline std::string format_rational(const Rational& v) {
  return boost::multiprecision::numerator(v).str() + "/" +
         boost::multiprecision::denominator(v).str();
}

// Accepts "p/q" or a bare integer "p". Strict: no whitespace, no empty
// numerator or denominator, denominator nonzero.
inline Rational parse_rational(const std::string& text) {
  const auto parse_int = [](const std::string& s) -> BigInt {
    if (s.empty() || (s.size() == 1 && (s[0] == '+' || s[0] == '-')))
      throw ParseError("invalid integer literal: '" + s + "'");
    std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw ParseError("invalid integer literal: '" + s + "'");
    // cpp_int's string constructor rejects an explicit leading '+'.
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  };
  const std::size_t slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  const BigInt p = parse_int(text.substr(0, slash));
  const BigInt q = parse_int(text.substr(slash + 1));
  if (q == 0) throw ParseError("zero denominator in '" + text + "'");
  if (q < 0) throw ParseError("negative denominator in '" + text + "'");
  return Rational(p, q);
}

}  // namespace kdec
