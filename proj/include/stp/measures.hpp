#pragma once

// Borel probability measures on T^1 given by their distribution functions,
// and the support analysis built on one-sided interval masses.

#include "stp/circle.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace stp {

class DenjoyMap;

/// A non-atomic probability measure on T^1 represented by its CDF F on [0, 1].
class CircleMeasure {
 public:
  enum class Kind { Lebesgue, CantorStaircase, DenjoyInvariant, Custom };
  using Cdf = std::function<Rational(const Rational&)>;

  static CircleMeasure lebesgue();
  /// The middle-thirds Cantor measure; F is evaluated from `depth` ternary digits.
  static CircleMeasure cantor(unsigned depth = 60);
  /// The invariant measure of a Denjoy map: F is the collapse map h.
  static CircleMeasure denjoy(std::shared_ptr<const DenjoyMap> map);
  static CircleMeasure custom(std::string name, Cdf cdf, Rational error_bound = 0);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  /// Bound on |F_computed(x) - F(x)| for any single evaluation.
  const Rational& error_bound() const noexcept { return error_bound_; }
  unsigned depth() const noexcept { return depth_; }
  const std::shared_ptr<const DenjoyMap>& denjoy_map() const noexcept { return denjoy_; }

  /// F(x) for x in [0, 1].
  Rational cdf(const Rational& x) const;
  /// Mass of the counterclockwise open arc (a, b); a == b is the full turn.
  Rational interval_measure(const Rational& a, const Rational& b) const;
  Rational arc_mass(const Arc& arc) const;
  Rational ball_mass(const Rational& center, const Rational& radius) const {
    return arc_mass(Arc(center, radius));
  }
  /// True when v is above the evaluation noise, i.e. v > 2 * error_bound.
  bool is_positive(const Rational& v) const { return v > 2 * error_bound_; }

  /// max over the grid i/grid of nu(B(i/grid, delta)); tends to 0 with delta for non-atomic measures.
  Rational atom_modulus(const Rational& delta, unsigned grid) const;

 private:
  CircleMeasure(Kind kind, std::string name, Cdf cdf, Rational error_bound, unsigned depth);

  Kind kind_;
  std::string name_;
  Cdf cdf_;
  Rational error_bound_;
  unsigned depth_ = 0;
  std::shared_ptr<const DenjoyMap> denjoy_;
};

std::string to_string(CircleMeasure::Kind k);

/// Devil's staircase F(x) from at most `depth` ternary digits. Exact whenever the
/// expansion reaches a digit 1, terminates, or closes its period within that depth.
Rational cantor_cdf(const Rational& x, unsigned depth);

struct ProbeOptions {
  Rational tol = pow2(-40);
  unsigned max_iterations = 256;
};

/// t_n = inf{r >= 0 : nu(B(x, r)) >= 1/n}, located by bisection to opts.tol.
///
/// The returned value r always satisfies nu(B(x, r')) >= 1/n for r' > r, and is
/// the simplest rational in the final bracket when that one still has enough mass.
Rational t_sequence(const CircleMeasure& m, const Rational& x, std::uint64_t n, const ProbeOptions& opts = {});

/// Resolution-limited support test: nu(B(x, 2^-j)) > 0 for every 2^-j down to tol.
bool support_contains(const CircleMeasure& m, const Rational& x, const Rational& tol = pow2(-40));

enum class SupportKind { BothSides, IsolatedLeft, IsolatedRight };
std::string to_string(SupportKind k);

struct SupportClassification {
  SupportKind kind = SupportKind::BothSides;
  /// The unique support point y bounding the one-sided null gap.
  std::optional<Rational> gap_partner;
  /// s_x, the Lebesgue length of the null gap between x and y.
  std::optional<Rational> gap_size;
  /// The classification is certified down to this scale only.
  Rational resolution;
  /// True when the partner was pinned exactly (the null gap reaches y itself).
  bool partner_exact = false;
};

/// Classifies a support point as approached from both sides or isolated from one side.
/// Throws ResolutionError when neither side carries mass at the probing scale.
SupportClassification classify_support_point(const CircleMeasure& m, const Rational& x,
                                             const ProbeOptions& opts = {});

}  // namespace stp
