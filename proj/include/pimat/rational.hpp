#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace pimat {

/// Exact rational number; always kept canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Raised on malformed textual input (polynomials, partitions, shapes).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_string(const Rational& q);

/// Accepts "n" or "n/d" with an optional sign; throws ParseError otherwise.
Rational parse_rational(std::string_view text);

/// Least common multiple of all denominators (1 for an empty range).
template <class Range>
Integer common_denominator(const Range& values) {
  Integer l = 1;
  for (const Rational& q : values) {
    if (q.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  return l;
}

}  // namespace pimat
