#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace contract {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "a/b", "a" or an exact decimal such as "-0.125". Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

// Canonical "a/b" (or "a" when the denominator is 1).
std::string to_string(const Rational& value);

// Decimal rendering with the given number of fractional digits (display only).
std::string to_decimal(const Rational& value, int digits = 12);

Rational make_rational(std::int64_t num, std::int64_t den = 1);

Rational pow(const Rational& base, int exponent);

Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

// Smallest integer k >= 0 with base^k >= target. Requires base > 1.
int ceil_log(const Rational& base, const Rational& target);

// Smallest integer k >= 0 with base^k <= target. Requires 0 < base < 1 and target > 0.
int ceil_log_below(const Rational& base, const Rational& target);

}  // namespace contract
