#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qlo {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Arbitrary-precision rational, always canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;

using RatVector = std::vector<Rational>;

/// Parses "p", "p/q" or "-p/q" (decimal integers). The result is canonicalized;
/// a zero denominator or trailing garbage throws ParseError.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Integer lcm_of_denominators(std::span<const Rational> values);

/// Exact binomial coefficient.
Integer binomial(unsigned n, unsigned k);

/// 2^e as an Integer.
Integer pow2(unsigned e);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// num / den in canonical form (the two-argument mpq_class constructor does
/// not reduce). Throws DomainError when den is zero.
Rational ratio(const Integer& num, const Integer& den);

/// Integer holding a 64-bit unsigned value on every platform.
Integer from_u64(std::uint64_t v);

/// Rational equal to the given double (exactly, every finite double is dyadic).
Rational rational_from_double(double value);

}  // namespace qlo
