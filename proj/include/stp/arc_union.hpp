#pragma once

#include "stp/circle.hpp"

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace stp {

/// Exact Lebesgue measure of a finite union of open arcs (sort-and-sweep).
Rational union_measure(std::span<const Arc> arcs);

/// The arc cut at 0 into at most two half-open pieces [a, b) of [0, 1].
std::vector<std::pair<Rational, Rational>> linear_pieces(const Arc& arc);

/// A growing union of arcs kept as disjoint closed pieces of [0, 1], with the
/// measure of the union maintained under an arbitrary interval mass function.
/// Inserting arcs in the order K, K-1, ..., l yields every tail union
/// U_l = m(A_l u ... u A_K) in one pass.
class ArcUnion {
 public:
  /// mass(a, b) for 0 <= a <= b <= 1; must be additive on adjacent pieces.
  using Mass = std::function<Rational(const Rational&, const Rational&)>;

  /// Lebesgue measure.
  ArcUnion();
  explicit ArcUnion(Mass mass);

  void insert(const Arc& arc);
  const Rational& measure() const noexcept { return total_; }
  std::size_t piece_count() const noexcept { return pieces_.size(); }
  /// Disjoint pieces in increasing order.
  std::vector<std::pair<Rational, Rational>> pieces() const;

 private:
  void insert_piece(Rational a, Rational b);

  Mass mass_;
  std::map<Rational, Rational> pieces_;  // start -> end
  Rational total_ = 0;
};

}  // namespace stp
