#include "stp/arc_union.hpp"

#include <algorithm>

namespace stp {

std::vector<std::pair<Rational, Rational>> linear_pieces(const Arc& arc) {
  std::vector<std::pair<Rational, Rational>> out;
  if (arc.empty()) return out;
  Rational a = arc.start();
  Rational b = a + arc.length();
  if (b <= 1) {
    out.emplace_back(a, b);
  } else {
    out.emplace_back(a, Rational(1));
    out.emplace_back(Rational(0), b - 1);
  }
  return out;
}

Rational union_measure(std::span<const Arc> arcs) {
  std::vector<std::pair<Rational, Rational>> pieces;
  pieces.reserve(arcs.size() * 2);
  for (const auto& arc : arcs) {
    auto p = linear_pieces(arc);
    pieces.insert(pieces.end(), p.begin(), p.end());
  }
  std::sort(pieces.begin(), pieces.end());
  Rational total = 0;
  bool open = false;
  Rational cur_a, cur_b;
  for (auto& [a, b] : pieces) {
    if (open && a <= cur_b) {
      if (b > cur_b) cur_b = b;
      continue;
    }
    if (open) total += cur_b - cur_a;
    cur_a = a;
    cur_b = b;
    open = true;
  }
  if (open) total += cur_b - cur_a;
  return total;
}

ArcUnion::ArcUnion() : ArcUnion([](const Rational& a, const Rational& b) { return b - a; }) {}

ArcUnion::ArcUnion(Mass mass) : mass_(std::move(mass)) {}

void ArcUnion::insert(const Arc& arc) {
  for (auto& [a, b] : linear_pieces(arc)) insert_piece(a, b);
}

void ArcUnion::insert_piece(Rational a, Rational b) {
  // Absorb every stored piece that overlaps or touches [a, b].
  auto it = pieces_.upper_bound(a);
  if (it != pieces_.begin()) {
    auto prev = std::prev(it);
    if (prev->second >= a) it = prev;
  }
  while (it != pieces_.end() && it->first <= b) {
    if (it->first < a) a = it->first;
    if (it->second > b) b = it->second;
    total_ -= mass_(it->first, it->second);
    it = pieces_.erase(it);
  }
  total_ += mass_(a, b);
  pieces_.emplace(std::move(a), std::move(b));
}

std::vector<std::pair<Rational, Rational>> ArcUnion::pieces() const {
  return {pieces_.begin(), pieces_.end()};
}

}  // namespace stp
