#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bilinear {

using Integer = mpz_class;
// mpq_class keeps every arithmetic result in canonical form (gcd 1, positive
// denominator). Only construction from a raw numerator/denominator pair needs
// an explicit canonicalize(), which make_rational does.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

// Parses "p", "-p" or "p/q". Throws ParseError on malformed input or q == 0.
Rational parse_rational(std::string_view text);

// Canonical text: integers bare, otherwise "p/q" in lowest terms.
std::string to_string(const Rational& r);

bool is_integer(const Rational& r);
bool is_canonical(const Rational& r);

Rational abs(const Rational& r);

// floor(log2(r)) style helper returning log2 as double, for complexity bounds.
double log2_of(const Rational& r);
double log2_of(const Integer& z);

}  // namespace bilinear
