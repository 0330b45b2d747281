#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mora {

/// Exact arbitrary-precision rational, always kept in lowest terms.
using Rational = mpq_class;

/// Parses "3", "-2", "1/2", "0.25", "1.5/2" into an exact rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_one(const Rational& r) { return r == 1; }
inline int compare(const Rational& a, const Rational& b) { return cmp(a, b); }

Rational pow(const Rational& base, unsigned long exponent);

/// Binomial coefficient C(n, k) as an exact integer-valued rational.
Rational binomial(unsigned n, unsigned k);

double to_double(const Rational& r);

}  // namespace mora
