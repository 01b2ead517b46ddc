#pragma once

// A truncated Denjoy counterexample: the rotation by theta with the orbit of 0
// blown up into wandering intervals I_j of length c * lambda^|j| for |j| <= N.
//
// With L_N the total length of the kept intervals,
//   Phi(y) = (1 - L_N) y + sum_{p_j < y} l_j      (p_j = {j theta})
// embeds the rotation circle, and h collapses each I_j back to p_j. The map f
// sends I_j affinely onto I_{j+1} and is Phi o R_theta o h elsewhere, so
// h o f = R_theta o h holds exactly. Intervals past N are dropped; their total
// length is the tail bound and must fit inside the requested tolerance.

#include "stp/numeric.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace stp {

struct DenjoyParams {
  /// Rotation number; a rational with denominator above 10^6 stands in for an irrational.
  Rational theta;
  Rational c = Rational(1, 6);
  Rational lambda = Rational(1, 2);
  unsigned n_max = 64;
  /// Accepted truncation error (Lebesgue length of the dropped intervals).
  Rational tol = pow2(-64);
};

/// F_m / F_{m+1}, the golden-mean convergent with the smallest denominator above min_den.
Rational golden_convergent(const BigInt& min_den);

class DenjoyMap {
 public:
  static std::shared_ptr<const DenjoyMap> build(const DenjoyParams& params);

  const DenjoyParams& params() const noexcept { return params_; }
  /// sum over all j of c lambda^|j|, the untruncated gap length.
  Rational total_gap_length() const;
  /// L_N, the gap length kept in the model.
  const Rational& model_gap_length() const noexcept { return kept_; }
  /// Length of the intervals with |j| > N.
  Rational tail_bound() const;

  Rational gap_length(long j) const;
  Rational orbit_point(const BigInt& j) const;
  /// Start of I_j for |j| <= N.
  Rational gap_start(long j) const;
  /// Index j with x in the closed interval I_j, if any.
  std::optional<long> gap_index(const Rational& x) const;

  /// Phi: the rotation circle into the Denjoy circle (left-continuous at gap points).
  Rational embed(const Rational& y) const;
  /// h: the monotone degree-one collapse, a semiconjugacy to the rotation.
  Rational collapse(const Rational& x) const;
  /// CDF of the invariant measure on [0, 1].
  Rational cdf(const Rational& x) const;

  Rational apply(const Rational& x) const { return power(x, 1); }
  Rational apply_inverse(const Rational& x) const { return power(x, -1); }
  /// f^n for any integer n.
  Rational power(const Rational& x, const BigInt& n) const;

 private:
  explicit DenjoyMap(DenjoyParams params);

  struct Gap {
    Rational point;
    long index;
    Rational length;
    Rational start;
  };
  /// Position in gaps_ of the largest start <= x, or npos.
  std::size_t locate(const Rational& x) const;

  DenjoyParams params_;
  Rational kept_;
  std::vector<Gap> gaps_;          // sorted by point
  std::vector<Rational> prefix_;   // prefix_[i] = sum of lengths of gaps_[0..i)
  std::vector<std::size_t> by_index_;  // j + N -> position in gaps_
};

}  // namespace stp
