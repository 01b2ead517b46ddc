#pragma once

// The dynamical systems: expanding endomorphisms of T^1 and T^n, rotations,
// and the truncated Denjoy homeomorphism.

#include "stp/circle.hpp"
#include "stp/continued_fraction.hpp"
#include "stp/denjoy.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>

namespace stp {

struct MultExpanding {};

struct SimultExpanding {
  std::size_t n = 1;
};

struct Rotation {
  /// The angle as given; for an irrational angle this is unused.
  Rational theta;
  std::optional<QuadraticIrrational> irrational;
};

struct Denjoy {
  std::shared_ptr<const DenjoyMap> map;
};

class SystemSpec {
 public:
  using Variant = std::variant<MultExpanding, SimultExpanding, Rotation, Denjoy>;

  static SystemSpec mult_expanding() { return SystemSpec(MultExpanding{}); }
  static SystemSpec simult_expanding(std::size_t n);
  static SystemSpec rotation(const Rational& theta);
  static SystemSpec rotation(const QuadraticIrrational& theta);
  static SystemSpec denjoy(std::shared_ptr<const DenjoyMap> map);

  const Variant& variant() const noexcept { return v_; }
  std::string name() const;
  /// Dimension of the torus acted on.
  std::size_t dim() const noexcept;
  bool invertible() const noexcept { return v_.index() >= 2; }
  bool isometry() const noexcept { return v_.index() == 2; }

  const Rotation* rotation_data() const noexcept { return std::get_if<Rotation>(&v_); }
  const DenjoyMap* denjoy_map() const noexcept;

  /// The rotation angle rounded down to `bits` bits.
  FixedPoint rotation_angle_fixed(std::size_t bits) const;
  /// True when the rotation angle is exactly representable at `bits` bits.
  bool rotation_angle_exact_at(std::size_t bits) const;

 private:
  explicit SystemSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// T^g(alpha). For Rotation and Denjoy g is a scalar step count n >= 1.
TorusPoint forward(const SystemSpec& s, const SemigroupIndex& g, const TorusPoint& alpha,
                   std::size_t output_bits = 64);

/// f^n(x) for any integer n, on invertible systems.
CirclePoint iterate(const SystemSpec& s, const BigInt& n, const CirclePoint& x, std::size_t output_bits = 64);

/// f(x) or f^{-1}(x) on a Denjoy system.
CirclePoint denjoy_apply(const SystemSpec& s, int direction, const CirclePoint& x);

/// The open arc f^{-n}(B(x, r)) = (a, b).
struct PreimageInterval {
  Arc arc;
  BigInt step;
  /// Bound on the displacement of the endpoints from the true preimage.
  Rational error_bound;

  Rational a() const { return arc.start(); }
  Rational b() const { return arc.end(); }
};

PreimageInterval preimage_ball(const SystemSpec& s, const BigInt& n, const Arc& ball);

/// preimage_ball for many (n, ball) pairs, sharing one angle expansion.
std::vector<PreimageInterval> preimage_balls(const SystemSpec& s, std::span<const BigInt> steps,
                                             std::span<const Arc> balls);

enum class RecurrenceStatus { Complete, Periodic, BudgetExhausted };
std::string to_string(RecurrenceStatus s);

enum class RecurrenceMethod {
  /// Continued fractions for rotations, semiconjugate convergents for Denjoy.
  Auto,
  /// Brute-force argmin scan over n = 1, 2, ...
  Scan,
};

struct RecurrenceOptions {
  RecurrenceMethod method = RecurrenceMethod::Auto;
  std::uint64_t budget = 1000000;
};

struct RecurrenceTimes {
  CirclePoint x;
  std::vector<BigInt> times;
  /// d(f^{-n_k}(x), x); dyadic approximations for irrational rotations.
  std::vector<Rational> distances;
  RecurrenceStatus status = RecurrenceStatus::Complete;
  std::string method;
};

/// The first K best-return times of f^{-1} at x.
RecurrenceTimes recurrence_times(const SystemSpec& s, const CirclePoint& x, std::size_t count,
                                 const RecurrenceOptions& opts = {});

/// Lifted displacement of the orbit of 0 after n steps, divided by n.
Rational rotation_number_estimate(const SystemSpec& s, std::uint64_t iterations);

}  // namespace stp
