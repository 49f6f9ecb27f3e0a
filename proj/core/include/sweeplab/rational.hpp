// Exact rational scalar type. Every measure computation in this project runs
// on Rational; the kernels contain no floating point.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace sweeplab {

using Rational = mpq_class;
using BigInt = mpz_class;

// floor(x) as an integer.
BigInt rat_floor(const Rational& x);

// x - eps*floor(x/eps), in [0, eps). Requires eps > 0.
Rational rat_mod(const Rational& x, const Rational& eps);

// 2^e for any integer e, negative allowed.
Rational rat_pow2(long e);

// Parses "p", "-p" or "p/q" with decimal digits. Rejects malformed input and
// zero denominators.
std::optional<Rational> rat_parse(std::string_view s);

// Canonical "p" or "p/q".
std::string rat_str(const Rational& x);

// A rational upper bound for sqrt(x), exact when x is a perfect square of a
// rational with the same denominator after scaling. Requires x >= 0.
Rational rat_sqrt_upper(const Rational& x);

// Rational from a 64-bit integer (gmpxx lacks a long long constructor).
inline Rational rat_int(long long v) {
  static_assert(sizeof(long) == 8, "expects 64-bit long");
  return Rational(static_cast<long>(v));
}

// True if x = a / 2^e for integers a, e >= 0.
bool rat_is_dyadic(const Rational& x);

// num(x) * 2^k / den(x) when den(x) divides 2^k; requires dyadic x.
BigInt rat_scaled_by_pow2(const Rational& x, long k);

}  // namespace sweeplab
