#include "stp/circle.hpp"

#include "stp/errors.hpp"

#include <algorithm>

namespace stp {

namespace {

const Rational kHalf(1, 2);

template <class F>
CirclePoint binary_op(const CirclePoint& a, const CirclePoint& b, F&& f) {
  if (a.backend() != b.backend()) throw BackendMismatch("rational and fixed-point circle points mixed");
  if (const auto* x = a.as_rational()) return CirclePoint::exact(f(*x, *b.as_rational()));
  return CirclePoint::fixed(f(*a.as_fixed(), *b.as_fixed()));
}

}  // namespace

CirclePoint CirclePoint::exact(const Rational& x) { return CirclePoint(frac(x)); }

CirclePoint CirclePoint::fixed(const Rational& x, std::size_t bits) {
  return CirclePoint(FixedPoint::from_rational(x, bits));
}

std::size_t CirclePoint::bits() const noexcept {
  const auto* f = as_fixed();
  return f ? f->bits() : 0;
}

Rational CirclePoint::value() const {
  if (const auto* r = as_rational()) return *r;
  return as_fixed()->to_rational();
}

double CirclePoint::to_double() const {
  if (const auto* r = as_rational()) return stp::to_double(*r);
  return as_fixed()->to_double();
}

CirclePoint CirclePoint::in_backend_of(const CirclePoint& like) const {
  if (like.backend() == Backend::Rational) {
    if (backend() == Backend::Rational) return *this;
    return exact(value());
  }
  if (const auto* f = as_fixed(); f && f->bits() == like.bits()) return *this;
  return fixed(value(), like.bits());
}

CirclePoint CirclePoint::operator+(const CirclePoint& other) const {
  return binary_op(*this, other, [](const auto& x, const auto& y) { return x + y; });
}

CirclePoint CirclePoint::operator-(const CirclePoint& other) const {
  return binary_op(*this, other, [](const auto& x, const auto& y) { return x - y; });
}

CirclePoint CirclePoint::operator-() const {
  if (const auto* r = as_rational()) return exact(-*r);
  return fixed(-*as_fixed());
}

CirclePoint CirclePoint::times(const BigInt& k, std::size_t output_bits) const {
  if (const auto* r = as_rational()) return exact(*r * Rational(k));
  const auto& f = *as_fixed();
  FixedPoint::check_budget(k, f.bits(), output_bits);
  return fixed(f.times(k));
}

std::string to_string(const CirclePoint& p) { return to_string(p.value()); }

TorusPoint::TorusPoint(std::vector<CirclePoint> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("torus point needs at least one coordinate");
  for (const auto& c : coords_) {
    if (c.backend() != coords_.front().backend() || c.bits() != coords_.front().bits()) {
      throw BackendMismatch("torus coordinates must share one backend and precision");
    }
  }
}

SemigroupIndex::SemigroupIndex(std::vector<BigInt> components) : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("semigroup index needs at least one component");
  for (const auto& c : components_) {
    if (c < 1) throw DomainError("semigroup index components must be >= 1");
  }
}

SemigroupIndex::SemigroupIndex(std::initializer_list<long long> components)
    : SemigroupIndex([&] {
        std::vector<BigInt> v;
        for (long long c : components) v.emplace_back(c);
        return v;
      }()) {}

std::string to_string(const SemigroupIndex& k) {
  std::string out = "(";
  for (std::size_t i = 0; i < k.dim(); ++i) {
    if (i) out += ",";
    out += k[i].str();
  }
  return out + ")";
}

Arc::Arc(Rational center, Rational radius) : center_(frac(center)), radius_(std::move(radius)) {
  if (radius_ < 0) throw DomainError("arc radius must be nonnegative");
  if (radius_ > kHalf) radius_ = kHalf;
}

Arc Arc::from_endpoints(const Rational& a, const Rational& b) {
  Rational len = frac(b - a);
  if (len == 0) len = 1;
  Rational r = len / 2;
  return Arc(a + r, r);
}

Rational dist(const Rational& x, const Rational& y) {
  Rational d = frac(x - y);
  return d > kHalf ? 1 - d : d;
}

Rational dist(const CirclePoint& x, const CirclePoint& y) {
  if (x.backend() != y.backend()) throw BackendMismatch("rational and fixed-point circle points mixed");
  if (x.backend() == Backend::Fixed) return (*x.as_fixed() - *y.as_fixed()).distance_to_zero().to_rational();
  return dist(*x.as_rational(), *y.as_rational());
}

SemigroupIndex compose(const SemigroupIndex& k, const SemigroupIndex& l) {
  if (k.dim() != l.dim()) throw DomainError("semigroup indices of different dimension");
  std::vector<BigInt> out(k.dim());
  for (std::size_t i = 0; i < k.dim(); ++i) out[i] = k[i] * l[i];
  return SemigroupIndex(std::move(out));
}

TorusPoint act(const SemigroupIndex& k, const TorusPoint& alpha, std::size_t output_bits) {
  if (k.dim() != alpha.dim()) {
    throw DomainError("dimension mismatch: index has " + std::to_string(k.dim()) + " components, point has " +
                      std::to_string(alpha.dim()));
  }
  std::vector<CirclePoint> out;
  out.reserve(alpha.dim());
  for (std::size_t i = 0; i < alpha.dim(); ++i) out.push_back(alpha[i].times(k[i], output_bits));
  return TorusPoint(std::move(out));
}

bool ball_contains(const Arc& b, const Rational& y) {
  if (b.empty()) return false;
  return dist(b.center(), y) < b.radius();
}

bool ball_contains(const Arc& b, const CirclePoint& y) { return ball_contains(b, y.value()); }

std::string to_string(Side s) {
  switch (s) {
    case Side::Left: return "Left";
    case Side::Right: return "Right";
    case Side::Center: return "Center";
    case Side::Antipode: return "Antipode";
  }
  return "?";
}

Rational signed_offset(const Rational& center, const Rational& y) {
  Rational d = frac(y - center);
  return d > kHalf ? d - 1 : d;
}

Side half_interval_side(const Rational& center, const Rational& y) {
  Rational d = frac(y - center);
  if (d == 0) return Side::Center;
  if (d == kHalf) return Side::Antipode;
  return d < kHalf ? Side::Right : Side::Left;
}

Side half_interval_side(const CirclePoint& center, const CirclePoint& y) {
  return half_interval_side(center.value(), y.value());
}

bool ordered_less(const Rational& center, const Rational& a, const Rational& b) {
  if (half_interval_side(center, a) == Side::Antipode || half_interval_side(center, b) == Side::Antipode) {
    throw DomainError("the order on B(x, 1/2) is undefined at the antipode");
  }
  return signed_offset(center, a) < signed_offset(center, b);
}

}  // namespace stp
