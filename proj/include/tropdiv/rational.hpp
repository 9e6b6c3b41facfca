// SPDX-License-Identifier: MIT
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace tropdiv {

// Exact rational arithmetic. Lengths, offsets and PL function values are
// rationals; chip counts stay machine integers.
using Rational = mpq_class;
using Integer = mpz_class;
using Int = long long;

// Parses "p" or "p/q" (q > 0, optional leading '-' on p only). Returns
// nullopt on any grammar violation. The result is always canonical.
std::optional<Rational> parse_rational(const std::string& text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string rational_str(const Rational& q);

// floor(a/b) for exact rationals, as an Integer.
Integer rational_floor_div(const Rational& a, const Rational& b);

// True when q is an integer.
bool rational_is_integer(const Rational& q);

// Clamps an Integer into Int, throwing invariant_violation on overflow.
// Chip arithmetic everywhere assumes coefficients fit in 64 bits.
Int to_int_checked(const Integer& z, const char* what);

// gmpxx has no long long constructors; these bridge Int explicitly.
inline Integer to_integer(Int v) { return Integer(static_cast<long>(v)); }
inline Rational to_rational(Int v) { return Rational(static_cast<long>(v)); }

} // namespace tropdiv
