#include "stp/measures.hpp"

#include "stp/denjoy.hpp"
#include "stp/errors.hpp"

#include <map>

namespace stp {

CircleMeasure::CircleMeasure(Kind kind, std::string name, Cdf cdf, Rational error_bound, unsigned depth)
    : kind_(kind), name_(std::move(name)), cdf_(std::move(cdf)), error_bound_(std::move(error_bound)), depth_(depth) {}

CircleMeasure CircleMeasure::lebesgue() {
  return CircleMeasure(Kind::Lebesgue, "lebesgue", [](const Rational& x) { return x; }, 0, 0);
}

CircleMeasure CircleMeasure::cantor(unsigned depth) {
  if (depth == 0 || depth > 4096) throw DomainError("cantor depth must be in [1, 4096]");
  return CircleMeasure(Kind::CantorStaircase, "cantor", [depth](const Rational& x) { return cantor_cdf(x, depth); },
                       pow2(-static_cast<int>(depth)), depth);
}

CircleMeasure CircleMeasure::denjoy(std::shared_ptr<const DenjoyMap> map) {
  if (!map) throw DomainError("denjoy measure needs a map");
  auto m = map;
  CircleMeasure out(Kind::DenjoyInvariant, "denjoy", [m](const Rational& x) { return m->cdf(x); }, 0, 0);
  out.denjoy_ = std::move(map);
  return out;
}

CircleMeasure CircleMeasure::custom(std::string name, Cdf cdf, Rational error_bound) {
  if (!cdf) throw DomainError("custom measure needs a cdf");
  if (error_bound < 0) throw DomainError("error bound must be non-negative");
  return CircleMeasure(Kind::Custom, std::move(name), std::move(cdf), std::move(error_bound), 0);
}

std::string to_string(CircleMeasure::Kind k) {
  switch (k) {
    case CircleMeasure::Kind::Lebesgue: return "lebesgue";
    case CircleMeasure::Kind::CantorStaircase: return "cantor";
    case CircleMeasure::Kind::DenjoyInvariant: return "denjoy";
    case CircleMeasure::Kind::Custom: return "custom";
  }
  return "unknown";
}

Rational cantor_cdf(const Rational& x, unsigned depth) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  BigInt p = num(x);
  const BigInt q = den(x);
  Rational out = 0;
  Rational weight = Rational(1, 2);
  // A repeated remainder closes a period; the rest of the sum is geometric.
  std::map<BigInt, std::pair<Rational, Rational>> seen;
  for (unsigned i = 0; i < depth; ++i) {
    if (auto it = seen.find(p); it != seen.end()) {
      const auto& [out0, weight0] = it->second;
      return out0 + (out - out0) / (1 - weight / weight0);
    }
    seen.emplace(p, std::make_pair(out, weight));
    p *= 3;
    BigInt d = p / q;
    p -= d * q;
    if (d == 1) return out + weight;
    if (d == 2) out += weight;
    if (p == 0) return out;
    weight /= 2;
  }
  return out;
}

Rational CircleMeasure::cdf(const Rational& x) const {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  return cdf_(x);
}

Rational CircleMeasure::interval_measure(const Rational& a, const Rational& b) const {
  Rational fa = frac(a), fb = frac(b);
  if (fa < fb) return cdf(fb) - cdf(fa);
  return 1 - cdf(fa) + cdf(fb);
}

Rational CircleMeasure::arc_mass(const Arc& arc) const {
  if (arc.empty()) return 0;
  // The antipode carries no mass, so a clamped ball is a full turn.
  if (arc.radius() == Rational(1, 2)) return 1;
  return interval_measure(arc.start(), arc.end());
}

Rational CircleMeasure::atom_modulus(const Rational& delta, unsigned grid) const {
  if (grid == 0) throw DomainError("grid must be positive");
  Rational best = 0;
  for (unsigned i = 0; i < grid; ++i) best = std::max(best, ball_mass(Rational(i, grid), delta));
  return best;
}

namespace {

unsigned iterations_for(const Rational& width, const ProbeOptions& opts) {
  if (opts.tol <= 0) throw DomainError("tolerance must be positive");
  unsigned j = 0;
  Rational w = width;
  while (w > opts.tol) {
    w /= 2;
    ++j;
  }
  if (j > opts.max_iterations) throw BudgetExceeded("bisection needs more than max_iterations steps");
  return j;
}

}  // namespace

Rational t_sequence(const CircleMeasure& m, const Rational& x, std::uint64_t n, const ProbeOptions& opts) {
  if (n == 0) throw DomainError("t_n is defined for n >= 1");
  const Rational target(1, static_cast<long long>(n));
  auto enough = [&](const Rational& r) { return m.ball_mass(x, r) >= target; };
  Rational lo = 0, hi = Rational(1, 2);
  if (n == 1) return hi;
  unsigned steps = iterations_for(hi - lo, opts);
  for (unsigned i = 0; i < steps; ++i) {
    Rational mid = (lo + hi) / 2;
    if (enough(mid))
      hi = mid;
    else
      lo = mid;
  }
  Rational snapped = simplest_between(lo, hi);
  if (snapped > lo && enough(snapped)) return snapped;
  return hi;
}

bool support_contains(const CircleMeasure& m, const Rational& x, const Rational& tol) {
  if (tol <= 0) throw DomainError("tolerance must be positive");
  for (Rational r = Rational(1, 2); r >= tol; r /= 2)
    if (!m.is_positive(m.ball_mass(x, r))) return false;
  return true;
}

std::string to_string(SupportKind k) {
  switch (k) {
    case SupportKind::BothSides: return "both_sides";
    case SupportKind::IsolatedLeft: return "isolated_left";
    case SupportKind::IsolatedRight: return "isolated_right";
  }
  return "unknown";
}

SupportClassification classify_support_point(const CircleMeasure& m, const Rational& x0, const ProbeOptions& opts) {
  if (opts.tol <= 0 || opts.tol >= Rational(1, 4)) throw DomainError("tolerance must be in (0, 1/4)");
  const Rational x = frac(x0);
  Rational r0 = Rational(1, 2);
  while (r0 > opts.tol) r0 /= 2;

  // One-sided masses: right is (x, x + s), left is (x - s, x).
  auto side_mass = [&](bool right, const Rational& s) {
    return right ? m.interval_measure(x, x + s) : m.interval_measure(x - s, x);
  };
  bool left_pos = m.is_positive(side_mass(false, r0));
  bool right_pos = m.is_positive(side_mass(true, r0));

  SupportClassification out;
  out.resolution = r0;
  if (left_pos && right_pos) return out;
  if (!left_pos && !right_pos)
    throw ResolutionError("no mass on either side of " + to_string(x) + " at scale " + to_string(r0) +
                          "; the point is not resolved as a support point");

  const bool right = !right_pos;
  out.kind = right ? SupportKind::IsolatedRight : SupportKind::IsolatedLeft;
  Rational lo = r0, hi = 1 - r0;
  if (!m.is_positive(side_mass(right, hi)))
    throw ResolutionError("the null side of " + to_string(x) + " spans the whole circle at this resolution");
  unsigned steps = iterations_for(hi - lo, opts);
  for (unsigned i = 0; i < steps; ++i) {
    Rational mid = (lo + hi) / 2;
    if (m.is_positive(side_mass(right, mid)))
      hi = mid;
    else
      lo = mid;
  }
  // The gap length lies in [lo, hi]; prefer the simplest length that is still null.
  Rational s = simplest_between(lo, hi);
  if (s > lo && !m.is_positive(side_mass(right, s))) {
    out.partner_exact = true;
  } else {
    s = lo;
  }
  out.gap_size = s;
  out.gap_partner = frac(right ? x + s : x - s);
  return out;
}

}  // namespace stp
