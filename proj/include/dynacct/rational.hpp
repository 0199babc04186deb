#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dynacct {

using Rational = mpq_class;

// Accepts "3", "-1.25", "2.5e-3" and "7/4". Decimal strings are read exactly.
Rational parse_rational(std::string_view text);

// Canonical "p/q" or "p" form; parse_rational reads it back.
std::string to_string(const Rational& q);

// Rounded decimal rendering for human-facing output and CSV.
std::string to_decimal(const Rational& q, int digits = 12);

double to_double(const Rational& q);

Rational pow(const Rational& base, long exponent);

}  // namespace dynacct
