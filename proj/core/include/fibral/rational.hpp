#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace fibral {

// Every quantity in the library is an exact rational; no floating point
// is used anywhere.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p", or "p/q" with decimal digits only. Decimal points,
// exponents, whitespace, and zero denominators are rejected.
Rational parse_rational(std::string_view text);

// Canonical form: "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& value);

std::string to_string(const Integer& value);

// Canonical bracketed list, e.g. "[1,-1/2,0]".
std::string to_string(const std::vector<Rational>& values);

bool is_integral(const Rational& value);

// Least common multiple of the denominators; 1 for an empty range.
Integer common_denominator(const std::vector<Rational>& values);

}  // namespace fibral
