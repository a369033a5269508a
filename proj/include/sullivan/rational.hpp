#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "sullivan/errors.hpp"

namespace sullivan {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Accepts "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw ParseError("not a rational number: '" + s + "'");
  }
  if (q.get_den() == 0) throw ParseError("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace sullivan
