#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace boxlab {

/// Exact rational scalar used for every probability in the library.
/// GMP keeps values canonical: positive denominator, lowest terms.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "num/den" or a bare integer "num". Throws ParseError on anything
/// else (including a zero or negative denominator).
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form, denominator always printed ("1/1", "-3/4").
std::string to_fraction_string(const Rational& q);

/// Decimal rendering with the given number of significant digits, round half
/// up. Display only; never fed back into computations.
std::string to_decimal_string(const Rational& q, int significant_digits = 15);

}  // namespace boxlab
