#include "stp/fixed_point.hpp"

#include "stp/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <gmp.h>
#include <limits>

namespace stp {

namespace {

std::size_t limb_count(std::size_t bits) {
  if (bits == 0 || bits % 64 != 0) {
    throw DomainError("fixed-point precision must be a positive multiple of 64 bits, got " +
                      std::to_string(bits));
  }
  return bits / 64;
}

}  // namespace

FixedPoint::FixedPoint(std::size_t bits) : limbs_(limb_count(bits), 0) {}

FixedPoint FixedPoint::from_units(const BigInt& m, std::size_t bits) {
  FixedPoint out(bits);
  BigInt r;
  // r = m mod 2^B, nonnegative.
  mpz_fdiv_r_2exp(r.backend().data(), m.backend().data(), bits);
  std::size_t written = 0;
  mpz_export(out.limbs_.data(), &written, -1, sizeof(Limb), 0, 0, r.backend().data());
  return out;
}

FixedPoint FixedPoint::from_rational(const Rational& x, std::size_t bits) {
  Rational f = frac(x);
  BigInt scaled = num(f) << bits;
  BigInt q;
  mpz_fdiv_q(q.backend().data(), scaled.backend().data(), den(f).backend().data());
  return from_units(q, bits);
}

BigInt FixedPoint::units() const {
  BigInt out;
  mpz_import(out.backend().data(), limbs_.size(), -1, sizeof(Limb), 0, 0, limbs_.data());
  return out;
}

Rational FixedPoint::to_rational() const { return Rational(units()) * pow2(-static_cast<int>(bits())); }

double FixedPoint::to_double() const {
  // Top two limbs carry far more than double precision.
  double v = 0.0;
  std::size_t n = limbs_.size();
  for (std::size_t i = 0; i < std::min<std::size_t>(2, n); ++i) {
    v += std::ldexp(static_cast<double>(limbs_[n - 1 - i]), -64 * static_cast<int>(i + 1));
  }
  return v;
}

bool FixedPoint::is_zero() const noexcept {
  return std::all_of(limbs_.begin(), limbs_.end(), [](Limb l) { return l == 0; });
}

std::size_t FixedPoint::trailing_zeros() const noexcept {
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    if (limbs_[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(limbs_[i]));
  }
  return bits();
}

FixedPoint& FixedPoint::operator+=(const FixedPoint& other) {
  if (other.limbs_.size() != limbs_.size()) throw BackendMismatch("fixed-point precisions differ");
  fixed_kernel::add_mod(limbs_, other.limbs_);
  return *this;
}

FixedPoint FixedPoint::operator-() const {
  FixedPoint out(bits());
  unsigned char c = 1;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    Limb v = ~limbs_[i];
    Limb s = v + c;
    c = s < v;
    out.limbs_[i] = s;
  }
  return out;
}

FixedPoint& FixedPoint::operator-=(const FixedPoint& other) {
  if (other.limbs_.size() != limbs_.size()) throw BackendMismatch("fixed-point precisions differ");
  return *this += -other;
}

FixedPoint FixedPoint::times(const BigInt& k) const {
  if (k >= 0 && k <= std::numeric_limits<Limb>::max()) {
    auto small = k.convert_to<Limb>();
    FixedPoint out(bits());
    unsigned __int128 carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      unsigned __int128 p = static_cast<unsigned __int128>(limbs_[i]) * small + carry;
      out.limbs_[i] = static_cast<Limb>(p);
      carry = p >> 64;
    }
    return out;
  }
  return from_units(units() * k, bits());
}

FixedPoint FixedPoint::distance_to_zero() const {
  if (limbs_.back() >> 63) return -*this;
  return *this;
}

std::strong_ordering operator<=>(const FixedPoint& a, const FixedPoint& b) {
  if (a.limbs_.size() != b.limbs_.size()) throw BackendMismatch("fixed-point precisions differ");
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
  }
  return std::strong_ordering::equal;
}

void FixedPoint::check_budget(const BigInt& k, std::size_t bits, std::size_t output_bits) {
  std::size_t need = bit_length(k) + output_bits;
  if (need > bits) {
    throw PrecisionExhausted("multiplier with " + std::to_string(bit_length(k)) + " bits leaves fewer than " +
                             std::to_string(output_bits) + " correct bits at B = " + std::to_string(bits));
  }
}

}  // namespace stp
