#pragma once

// Radius values and profiles.
//
// A radius is stored as sqrt(s) with s a non-negative rational, which keeps
// profiles like q^{-1/2} exact: products of radii multiply radicands, and a
// value is rational exactly when its radicand is a rational square.

#include "stp/numeric.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace stp {

class SqrtRational {
 public:
  SqrtRational() = default;
  /// The rational r >= 0.
  static SqrtRational of(const Rational& r);
  /// sqrt(s) for s >= 0.
  static SqrtRational sqrt(const Rational& s);

  const Rational& square() const noexcept { return square_; }
  bool is_zero() const noexcept { return square_ == 0; }
  /// The value when it is rational.
  std::optional<Rational> rational() const;
  double to_double() const;
  /// floor(value * 2^bits) / 2^bits.
  Rational lower(unsigned bits) const;
  /// ceil(value * 2^bits) / 2^bits.
  Rational upper(unsigned bits) const;

  SqrtRational operator*(const SqrtRational& o) const { return sqrt(square_ * o.square_); }
  SqrtRational operator/(const SqrtRational& o) const;
  SqrtRational scaled(const Rational& c) const;
  SqrtRational pow(unsigned e) const;
  SqrtRational min(const SqrtRational& o) const { return square_ <= o.square_ ? *this : o; }

  friend bool operator==(const SqrtRational&, const SqrtRational&) = default;
  friend std::strong_ordering operator<=>(const SqrtRational& a, const SqrtRational& b) {
    return a.square_ < b.square_ ? std::strong_ordering::less
           : b.square_ < a.square_ ? std::strong_ordering::greater
                                   : std::strong_ordering::equal;
  }

  /// "p/q" when rational, otherwise "sqrt(p/q)".
  std::string str() const;
  static SqrtRational parse(const std::string& text);

 private:
  Rational square_ = 0;
};

/// On-curve radius profile q -> R_q.
class RadiusProfile {
 public:
  enum class Kind { Power, Table };

  /// R_q = coefficient * q^{-exponent}; exponent must be a non-negative multiple of 1/2.
  static RadiusProfile power(Rational coefficient, Rational exponent);
  /// R_q = values[q - first] for first <= q < first + size, zero elsewhere.
  static RadiusProfile table(std::vector<SqrtRational> values, BigInt first = 1);

  Kind kind() const noexcept { return kind_; }
  const Rational& coefficient() const noexcept { return coefficient_; }
  const Rational& exponent() const noexcept { return exponent_; }
  const std::vector<SqrtRational>& values() const noexcept { return values_; }
  const BigInt& first() const noexcept { return first_; }

  SqrtRational operator()(const BigInt& q) const;
  /// R_q >= R_{q+1} for every q >= from.
  bool weakly_decreasing_from(const BigInt& from) const;

 private:
  Kind kind_ = Kind::Power;
  Rational coefficient_ = 0;
  Rational exponent_ = 0;
  std::vector<SqrtRational> values_;
  BigInt first_ = 1;
};

/// Integer polynomials P_1..P_n (coefficients lowest degree first) and a start index N0.
struct PolynomialSpec {
  std::vector<std::vector<BigInt>> coefficients;
  BigInt start = 1;

  /// The identity curve q -> q in one dimension.
  static PolynomialSpec identity() { return PolynomialSpec{{{BigInt(0), BigInt(1)}}, BigInt(1)}; }

  std::size_t dim() const noexcept { return coefficients.size(); }
  std::size_t degree(std::size_t j) const;
  BigInt eval(std::size_t j, const BigInt& q) const;
  std::vector<BigInt> point(const BigInt& q) const;

  /// Every P_j nonconstant with positive leading coefficient, P_j(N0) >= 1, and
  /// P_j(q + 1) > P_j(q) for all q >= N0 (certified up to a root bound of the difference).
  void validate() const;
  /// q with P_j(q) = value and q >= N0, if any.
  std::optional<BigInt> solve(std::size_t j, const BigInt& value) const;
};

}  // namespace stp
