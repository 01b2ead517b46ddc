#pragma once

#include "stp/numeric.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace stp {

/// A point of R/Z stored as m / 2^B with 0 <= m < 2^B, B a multiple of 64.
///
/// Addition and integer multiplication are performed modulo 1 and are exact
/// on this dyadic representation; the only precision loss is the one already
/// present when a real number was rounded into it. Callers budget that loss
/// with check_budget().
class FixedPoint {
 public:
  using Limb = std::uint64_t;

  explicit FixedPoint(std::size_t bits = 256);

  /// floor(frac(x) * 2^B) / 2^B.
  static FixedPoint from_rational(const Rational& x, std::size_t bits);
  /// m mod 2^B, interpreted in units of 2^-B (m may be negative).
  static FixedPoint from_units(const BigInt& m, std::size_t bits);

  std::size_t bits() const noexcept { return limbs_.size() * 64; }
  std::span<const Limb> limbs() const noexcept { return limbs_; }
  std::span<Limb> limbs() noexcept { return limbs_; }

  BigInt units() const;
  Rational to_rational() const;
  double to_double() const;
  bool is_zero() const noexcept;
  /// Number of trailing zero bits of m (B when m == 0).
  std::size_t trailing_zeros() const noexcept;

  FixedPoint& operator+=(const FixedPoint& other);
  FixedPoint& operator-=(const FixedPoint& other);
  friend FixedPoint operator+(FixedPoint a, const FixedPoint& b) { return a += b; }
  friend FixedPoint operator-(FixedPoint a, const FixedPoint& b) { return a -= b; }
  FixedPoint operator-() const;

  /// k * x mod 1, exact on the dyadic value.
  FixedPoint times(const BigInt& k) const;

  /// min(v, 1 - v), the distance to 0 on the circle; lies in [0, 1/2].
  FixedPoint distance_to_zero() const;

  friend bool operator==(const FixedPoint& a, const FixedPoint& b) = default;
  friend std::strong_ordering operator<=>(const FixedPoint& a, const FixedPoint& b);

  /// Throws PrecisionExhausted unless bit_length(k) + output_bits <= B.
  static void check_budget(const BigInt& k, std::size_t bits, std::size_t output_bits);

 private:
  std::vector<Limb> limbs_;
};

namespace fixed_kernel {

// Raw limb operations for hot loops. All spans share one length.

using Limb = FixedPoint::Limb;

inline void add_mod(std::span<Limb> acc, std::span<const Limb> x) noexcept {
  unsigned char carry = 0;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    Limb a = acc[i];
    Limb s = a + x[i];
    unsigned char c1 = s < a;
    Limb t = s + carry;
    unsigned char c2 = t < s;
    acc[i] = t;
    carry = c1 | c2;
  }
}

/// out = min(|a - b| mod 1, 1 - ...), the circle distance in units of 2^-B.
inline void circle_dist(std::span<const Limb> a, std::span<const Limb> b, std::span<Limb> out) noexcept {
  unsigned char borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Limb d = a[i] - b[i];
    unsigned char b1 = a[i] < b[i];
    Limb e = d - borrow;
    unsigned char b2 = d < borrow;
    out[i] = e;
    borrow = b1 | b2;
  }
  if (out.back() >> 63) {
    // value >= 1/2: take 2^B - value.
    unsigned char c = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
      Limb v = ~out[i];
      Limb s = v + c;
      c = s < v;
      out[i] = s;
    }
  }
}

/// a < b as unsigned multi-limb integers.
inline bool less(std::span<const Limb> a, std::span<const Limb> b) noexcept {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace fixed_kernel

}  // namespace stp
