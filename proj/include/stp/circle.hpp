#pragma once

// Points, arcs and the multiplicative action on T^1 = R/Z and T^n.

#include "stp/fixed_point.hpp"
#include "stp/numeric.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace stp {

enum class Backend { Rational, Fixed };

/// A point of T^1, either an exact rational or a B-bit fixed-point value,
/// always kept in its canonical representative in [0, 1).
class CirclePoint {
 public:
  CirclePoint() : value_(Rational(0)) {}
  /// Reduces x modulo 1.
  static CirclePoint exact(const Rational& x);
  static CirclePoint fixed(const FixedPoint& x) { return CirclePoint(x); }
  /// Rounds x into a B-bit fixed-point value.
  static CirclePoint fixed(const Rational& x, std::size_t bits);
  /// Parses "p/q" or a decimal as an exact point.
  static CirclePoint parse(std::string_view text) { return exact(parse_rational(text)); }

  Backend backend() const noexcept { return value_.index() == 0 ? Backend::Rational : Backend::Fixed; }
  /// Precision in bits (0 for the rational backend).
  std::size_t bits() const noexcept;

  const Rational* as_rational() const noexcept { return std::get_if<Rational>(&value_); }
  const FixedPoint* as_fixed() const noexcept { return std::get_if<FixedPoint>(&value_); }

  /// The exact value; dyadic for the fixed backend.
  Rational value() const;
  double to_double() const;
  /// Same point converted to `like`'s backend (rounding when going to fixed).
  CirclePoint in_backend_of(const CirclePoint& like) const;

  CirclePoint operator+(const CirclePoint& other) const;
  CirclePoint operator-(const CirclePoint& other) const;
  CirclePoint operator-() const;
  /// k * x mod 1. Fixed-point values check that `output_bits` survive the multiplication.
  CirclePoint times(const BigInt& k, std::size_t output_bits = 64) const;

  friend bool operator==(const CirclePoint& a, const CirclePoint& b) { return a.value_ == b.value_; }

 private:
  explicit CirclePoint(Rational x) : value_(std::move(x)) {}
  explicit CirclePoint(FixedPoint x) : value_(std::move(x)) {}
  std::variant<Rational, FixedPoint> value_;
};

std::string to_string(const CirclePoint& p);

/// A point of T^n; all coordinates share one backend and precision.
class TorusPoint {
 public:
  explicit TorusPoint(std::vector<CirclePoint> coords);
  TorusPoint(std::initializer_list<CirclePoint> coords) : TorusPoint(std::vector<CirclePoint>(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  const CirclePoint& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<CirclePoint>& coords() const noexcept { return coords_; }
  Backend backend() const noexcept { return coords_.front().backend(); }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

 private:
  std::vector<CirclePoint> coords_;
};

/// An element k of the multiplicative semigroup N^n under componentwise product.
class SemigroupIndex {
 public:
  explicit SemigroupIndex(std::vector<BigInt> components);
  SemigroupIndex(std::initializer_list<long long> components);
  static SemigroupIndex identity(std::size_t n) { return SemigroupIndex(std::vector<BigInt>(n, BigInt(1))); }

  std::size_t dim() const noexcept { return components_.size(); }
  const BigInt& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<BigInt>& components() const noexcept { return components_; }

  friend bool operator==(const SemigroupIndex&, const SemigroupIndex&) = default;
  friend auto operator<=>(const SemigroupIndex& a, const SemigroupIndex& b) {
    return a.components_ <=> b.components_;
  }

 private:
  std::vector<BigInt> components_;
};

std::string to_string(const SemigroupIndex& k);

/// The open ball B(center, radius) on T^1. Radii above 1/2 are clamped to 1/2,
/// which is the whole circle minus the antipode of the center.
class Arc {
 public:
  Arc() = default;
  Arc(Rational center, Rational radius);
  /// The counterclockwise open arc (a, b); a == b gives the circle minus {a}.
  static Arc from_endpoints(const Rational& a, const Rational& b);
  static Arc ball(const CirclePoint& center, const Rational& radius) { return Arc(center.value(), radius); }

  const Rational& center() const noexcept { return center_; }
  const Rational& radius() const noexcept { return radius_; }
  bool empty() const noexcept { return radius_ == 0; }
  /// Start point a in [0, 1).
  Rational start() const { return frac(center_ - radius_); }
  /// End point b in [0, 1).
  Rational end() const { return frac(center_ + radius_); }
  /// Lebesgue measure, 2 * radius.
  Rational length() const { return 2 * radius_; }

  friend bool operator==(const Arc&, const Arc&) = default;

 private:
  Rational center_ = 0;
  Rational radius_ = 0;
};

/// Circle distance min(|x - y|, 1 - |x - y|), in [0, 1/2].
Rational dist(const CirclePoint& x, const CirclePoint& y);
Rational dist(const Rational& x, const Rational& y);

/// Componentwise product, the semigroup law of N^n.
SemigroupIndex compose(const SemigroupIndex& k, const SemigroupIndex& l);

/// alpha -> (k_1 alpha_1, ..., k_n alpha_n) mod 1.
TorusPoint act(const SemigroupIndex& k, const TorusPoint& alpha, std::size_t output_bits = 64);

/// Open-ball membership: dist(center, y) < radius.
bool ball_contains(const Arc& b, const CirclePoint& y);
bool ball_contains(const Arc& b, const Rational& y);

enum class Side { Left, Right, Center, Antipode };
std::string to_string(Side s);

/// Position of y in B(center, 1/2) = B_-(center, 1/2) + B_+(center, 1/2) + {center}.
Side half_interval_side(const CirclePoint& center, const CirclePoint& y);
Side half_interval_side(const Rational& center, const Rational& y);

/// The total order on B(center, 1/2) induced by lifting both points next to center.
/// Throws DomainError when a or b is the antipode of center.
bool ordered_less(const Rational& center, const Rational& a, const Rational& b);

/// Lift of y into (center - 1/2, center + 1/2], expressed as the offset y - center.
Rational signed_offset(const Rational& center, const Rational& y);

}  // namespace stp
