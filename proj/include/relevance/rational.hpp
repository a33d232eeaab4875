#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace relevance {

// Exact rational backed by GMP; always kept in canonical (reduced, positive
// denominator) form.
using Rational = mpq_class;

// Accepts "p/q" or "p" with optional leading sign. Throws FormatError.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form; integers are written with denominator 1.
std::string format_rational(const Rational& value);

}  // namespace relevance
