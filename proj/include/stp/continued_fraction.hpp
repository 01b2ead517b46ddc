#pragma once

#include "stp/fixed_point.hpp"
#include "stp/numeric.hpp"

#include <string>
#include <vector>

namespace stp {

/// The real number (p + sqrt(d)) / q with d > 0 not a perfect square.
///
/// Stored normalised so that q divides d - p^2, which keeps the classical
/// continued-fraction recurrence in integers.
class QuadraticIrrational {
 public:
  QuadraticIrrational(BigInt p, BigInt d, BigInt q);
  /// (sqrt(5) - 1) / 2, the golden rotation angle.
  static QuadraticIrrational golden();

  const BigInt& p() const noexcept { return p_; }
  const BigInt& d() const noexcept { return d_; }
  const BigInt& q() const noexcept { return q_; }

  BigInt floor() const;
  /// floor(x * 2^bits) as a fixed-point point of T^1 (i.e. frac(x) rounded down).
  FixedPoint to_fixed(std::size_t bits) const;
  double to_double() const;
  /// First `terms` partial quotients a_0, a_1, ...
  std::vector<BigInt> partial_quotients(std::size_t terms) const;
  std::string str() const;

 private:
  BigInt p_, d_, q_;
};

/// Partial quotients of a rational, terminating.
std::vector<BigInt> partial_quotients(const Rational& x);

/// Denominators q_0, q_1, ... of the convergents of [a_0; a_1, a_2, ...].
std::vector<BigInt> convergent_denominators(const std::vector<BigInt>& partial_quotients);

}  // namespace stp
