#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace wakimoto {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q". Whitespace and floating point are rejected.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" rendering.
std::string to_string(const Rational& value);

Rational factorial(int n);

/// num/den in lowest terms; the two-argument mpq constructor does not reduce.
Rational frac(const Integer& num, const Integer& den);

}  // namespace wakimoto
