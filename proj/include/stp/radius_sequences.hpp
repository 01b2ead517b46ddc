#pragma once

// Radius sequences r: G -> [0, inf) and the constructions built from them.

#include "stp/measures.hpp"
#include "stp/radius.hpp"
#include "stp/systems.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>

namespace stp {

enum class SemigroupKind { Additive, Multiplicative, Product };
std::string to_string(SemigroupKind k);

/// One point of the support, in canonical order.
struct SupportEntry {
  /// The enumeration parameter: q on a polynomial curve, n for monotone
  /// sequences, k (position in the time list) for subset sequences.
  BigInt ordinal;
  SemigroupIndex index;
  SqrtRational radius;
};

enum class Divergence { Divergent, Convergent, Unknown };
std::string to_string(Divergence d);

class RadiusSequence {
 public:
  enum class Kind { Monotone, PolynomialSupported, ShrinkingOnSubset, Scaled, Custom };

  struct Monotone {
    RadiusProfile profile;
    SemigroupKind semigroup;
  };
  struct Polynomial {
    PolynomialSpec spec;
    RadiusProfile profile;
  };
  struct Subset {
    std::vector<BigInt> times;
    std::vector<SqrtRational> values;
    /// Set when the values dominate 1/k in measure, so the s = 1 sum diverges.
    bool harmonic_lower_bound = false;
  };
  struct Scaled {
    Rational factor;
    std::shared_ptr<const RadiusSequence> inner;
  };
  struct Custom {
    std::string name;
    SemigroupKind semigroup;
    std::size_t dim;
    std::function<SqrtRational(const SemigroupIndex&)> eval;
    std::function<void(const BigInt&, const std::function<bool(const SupportEntry&)>&)> support;
  };

  /// r_n = R_n on N (additive or multiplicative); R must be weakly decreasing.
  static RadiusSequence monotone(RadiusProfile profile, SemigroupKind semigroup = SemigroupKind::Multiplicative);
  static RadiusSequence shrinking_on_subset(std::vector<BigInt> times, std::vector<SqrtRational> values,
                                            bool harmonic_lower_bound = false);
  static RadiusSequence scaled(const Rational& factor, const RadiusSequence& inner);
  static RadiusSequence custom(Custom c);

  Kind kind() const noexcept { return static_cast<Kind>(v_.index()); }
  const auto& variant() const noexcept { return v_; }
  SemigroupKind semigroup() const;
  std::size_t dim() const;

  SqrtRational eval(const SemigroupIndex& g) const;

  /// Visits support entries with ordinal <= horizon in canonical order until f returns false.
  void for_each_support(const BigInt& horizon, const std::function<bool(const SupportEntry&)>& f) const;
  std::vector<SupportEntry> support(const BigInt& horizon) const;

  /// The underlying curve, profile and accumulated scale for Monotone and
  /// PolynomialSupported sequences (possibly wrapped in Scaled).
  struct CurveView {
    PolynomialSpec spec;
    RadiusProfile profile;
    Rational scale;
  };
  std::optional<CurveView> curve_view() const;

  /// r_n >= r_{n+1} along the support ordinals up to the horizon.
  bool weakly_decreasing(const BigInt& horizon) const;

 private:
  friend RadiusSequence make_polynomial_supported(const PolynomialSpec&, const RadiusProfile&);
  using Variant = std::variant<Monotone, Polynomial, Subset, Scaled, Custom>;
  explicit RadiusSequence(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

std::string to_string(RadiusSequence::Kind k);

/// r(P_1(q), ..., P_n(q)) = R_q for q >= N0 and zero elsewhere.
RadiusSequence make_polynomial_supported(const PolynomialSpec& spec, const RadiusProfile& profile);

/// r_{n_k} = 2 t_k(m, x) on the recurrence times and zero elsewhere.
RadiusSequence make_counterexample(const CircleMeasure& m, const Rational& x, const RecurrenceTimes& times,
                                   const ProbeOptions& opts = {});

/// mu(B(center, radius)); irrational radii are supported for Lebesgue only.
SqrtRational ball_mass(const CircleMeasure& m, const Rational& center, const SqrtRational& radius);

struct MeasureSum {
  Rational value = 0;
  bool exact = true;
  /// |value - true sum| <= error_bound.
  Rational error_bound = 0;
  std::size_t terms = 0;
  Divergence divergence = Divergence::Unknown;
};

/// Collects terms psi^s and sums them exactly; snapshots give prefix sums.
class MeasureSumBuilder {
 public:
  explicit MeasureSumBuilder(Divergence divergence = Divergence::Unknown) { sum_.divergence = divergence; }
  void add(const SqrtRational& psi, unsigned s, const Rational& psi_error = 0);
  MeasureSum snapshot();

 private:
  std::vector<Rational> pending_;
  MeasureSum sum_;
};

/// sum over support indices within the horizon of prod_j mu_j(B(x_j, r_g))^s.
MeasureSum partial_measure_sum(std::span<const CircleMeasure> measures, const std::vector<Rational>& x,
                               const RadiusSequence& r, unsigned s, const BigInt& horizon);

struct EquivalenceOptions {
  std::size_t ignore_prefix = 10;
  Rational threshold = 1000000;
};

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<SqrtRational> c1, c2;
  /// The index that broke equivalence, when it failed.
  std::optional<std::string> witness;
  std::string reason;
  std::size_t compared = 0;
};

/// Finite-horizon test of C1 s(k) <= r(k) <= C2 s(k) beyond an ignored prefix.
EquivalenceResult equivalence_check(const RadiusSequence& r, const RadiusSequence& s, const BigInt& horizon,
                                    const EquivalenceOptions& opts = {});

}  // namespace stp
