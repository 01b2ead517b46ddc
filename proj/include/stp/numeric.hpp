#pragma once

// Exact scalar types shared by every module: GMP-backed big integers and
// rationals, plus the few number-theoretic helpers the circle code needs.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <vector>
#include <string_view>

namespace stp {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Largest integer <= q.
BigInt floor(const Rational& q);
/// Smallest integer >= q.
BigInt ceil(const Rational& q);
/// Representative of q in [0, 1).
Rational frac(const Rational& q);

/// 2^e as an exact rational; e may be negative.
Rational pow2(int e);
Rational pow(const Rational& base, unsigned e);

/// Number of bits of |x| (0 for x == 0).
std::size_t bit_length(const BigInt& x);

/// floor(sqrt(x)) for x >= 0.
BigInt isqrt(const BigInt& x);
/// Smallest m with m*m >= x, for x >= 0.
BigInt isqrt_ceil(const BigInt& x);
bool is_perfect_square(const BigInt& x);
/// True iff q >= 0 is the square of a rational.
bool is_rational_square(const Rational& q);

/// The rational with the smallest denominator in the closed interval [lo, hi], 0 <= lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Exact sum by pairwise reduction, which keeps intermediate denominators balanced.
Rational sum_exact(std::vector<Rational> terms);

double to_double(const Rational& q);
double to_double(const BigInt& x);

/// "p/q" or "p" in lowest terms.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& x);

/// Accepts "p/q", integers, and finite decimals such as "0.25" or "-1.5e-3"; the value is exact.
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite double.
Rational from_double(double x);

}  // namespace stp
