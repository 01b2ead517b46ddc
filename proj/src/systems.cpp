#include "stp/systems.hpp"

#include "stp/errors.hpp"

#include <algorithm>

namespace stp {

namespace {

std::size_t round_bits(std::size_t bits) { return (bits + 63) / 64 * 64; }

// Working precision for an irrational angle multiplied by integers up to max_step.
std::size_t angle_bits(const BigInt& max_step) { return round_bits(bit_length(abs(max_step)) + 128); }

const Denjoy& need_denjoy(const SystemSpec& s) {
  const auto* d = std::get_if<Denjoy>(&s.variant());
  if (!d) throw DomainError(s.name() + " is not a Denjoy system");
  return *d;
}

void need_invertible(const SystemSpec& s) {
  if (!s.invertible()) throw DomainError(s.name() + " is not invertible; expanding maps expose the forward action only");
}

}  // namespace

SystemSpec SystemSpec::simult_expanding(std::size_t n) {
  if (n == 0) throw DomainError("dimension must be positive");
  return SystemSpec(SimultExpanding{n});
}

SystemSpec SystemSpec::rotation(const Rational& theta) { return SystemSpec(Rotation{frac(theta), std::nullopt}); }

SystemSpec SystemSpec::rotation(const QuadraticIrrational& theta) { return SystemSpec(Rotation{0, theta}); }

SystemSpec SystemSpec::denjoy(std::shared_ptr<const DenjoyMap> map) {
  if (!map) throw DomainError("denjoy system needs a built map");
  return SystemSpec(Denjoy{std::move(map)});
}

std::string SystemSpec::name() const {
  switch (v_.index()) {
    case 0: return "mult_expanding";
    case 1: return "simult_expanding(" + std::to_string(std::get<SimultExpanding>(v_).n) + ")";
    case 2: {
      const auto& r = std::get<Rotation>(v_);
      return "rotation(" + (r.irrational ? r.irrational->str() : to_string(r.theta)) + ")";
    }
    default: return "denjoy(" + to_string(std::get<Denjoy>(v_).map->params().theta) + ")";
  }
}

std::size_t SystemSpec::dim() const noexcept {
  if (const auto* s = std::get_if<SimultExpanding>(&v_)) return s->n;
  return 1;
}

const DenjoyMap* SystemSpec::denjoy_map() const noexcept {
  const auto* d = std::get_if<Denjoy>(&v_);
  return d ? d->map.get() : nullptr;
}

FixedPoint SystemSpec::rotation_angle_fixed(std::size_t bits) const {
  const auto* r = rotation_data();
  if (!r) throw DomainError(name() + " has no rotation angle");
  if (r->irrational) return r->irrational->to_fixed(bits);
  return FixedPoint::from_rational(r->theta, bits);
}

bool SystemSpec::rotation_angle_exact_at(std::size_t bits) const {
  const auto* r = rotation_data();
  if (!r || r->irrational) return false;
  BigInt d = den(r->theta);
  // d divides 2^bits iff d is a power of two no larger than 2^bits.
  return (d & (d - 1)) == 0 && bit_length(d) <= bits + 1;
}

CirclePoint iterate(const SystemSpec& s, const BigInt& n, const CirclePoint& x, std::size_t output_bits) {
  need_invertible(s);
  if (const DenjoyMap* f = s.denjoy_map()) {
    const Rational* v = x.as_rational();
    if (!v) throw BackendMismatch("the Denjoy map works in the rational backend");
    return CirclePoint::exact(f->power(*v, n));
  }
  const Rotation& r = *s.rotation_data();
  if (const Rational* v = x.as_rational()) {
    if (r.irrational) throw BackendMismatch("an irrational angle needs the fixed backend");
    return CirclePoint::exact(*v + Rational(n) * r.theta);
  }
  const std::size_t bits = x.bits();
  FixedPoint theta = s.rotation_angle_fixed(bits);
  if (!s.rotation_angle_exact_at(bits)) FixedPoint::check_budget(n, bits, output_bits);
  return x + CirclePoint::fixed(theta.times(n));
}

TorusPoint forward(const SystemSpec& s, const SemigroupIndex& g, const TorusPoint& alpha, std::size_t output_bits) {
  if (g.dim() != s.dim() || alpha.dim() != s.dim())
    throw DomainError("index and point must be " + std::to_string(s.dim()) + "-dimensional for " + s.name());
  if (s.invertible()) return TorusPoint{iterate(s, g[0], alpha[0], output_bits)};
  std::vector<CirclePoint> out;
  out.reserve(alpha.dim());
  for (std::size_t i = 0; i < alpha.dim(); ++i) out.push_back(alpha[i].times(g[i], output_bits));
  return TorusPoint(std::move(out));
}

CirclePoint denjoy_apply(const SystemSpec& s, int direction, const CirclePoint& x) {
  need_denjoy(s);
  if (direction != 1 && direction != -1) throw DomainError("direction must be +1 or -1");
  return iterate(s, BigInt(direction), x);
}

PreimageInterval preimage_ball(const SystemSpec& s, const BigInt& n, const Arc& ball) {
  std::vector<BigInt> steps{n};
  std::vector<Arc> balls{ball};
  return preimage_balls(s, steps, balls).front();
}

std::vector<PreimageInterval> preimage_balls(const SystemSpec& s, std::span<const BigInt> steps,
                                             std::span<const Arc> balls) {
  need_invertible(s);
  if (steps.size() != balls.size()) throw DomainError("one ball per step is required");
  for (const auto& n : steps)
    if (n < 0) throw DomainError("preimage step must be non-negative");
  std::vector<PreimageInterval> out;
  out.reserve(steps.size());

  if (const DenjoyMap* f = s.denjoy_map()) {
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const Arc& b = balls[i];
      const BigInt back = -steps[i];
      if (b.empty()) {
        out.push_back({Arc(f->power(b.center(), back), 0), steps[i], 0});
        continue;
      }
      Rational a = f->power(b.start(), back);
      Rational c = f->power(b.center(), back);
      Arc arc;
      if (b.radius() == Rational(1, 2)) {
        arc = Arc::from_endpoints(a, a);
      } else {
        Rational e = f->power(b.end(), back);
        // Both ends inside one collapsed interval: the preimage degenerates to a point.
        arc = a == e ? Arc(c, 0) : Arc::from_endpoints(a, e);
        if (a != e && c != a && c != e && !ball_contains(arc, c))
          throw Error("preimage arc lost f^-n(x); the map is not orientation preserving here");
      }
      out.push_back({arc, steps[i], f->tail_bound()});
    }
    return out;
  }

  const Rotation& r = *s.rotation_data();
  if (!r.irrational) {
    for (std::size_t i = 0; i < steps.size(); ++i)
      out.push_back({Arc(frac(balls[i].center() - Rational(steps[i]) * r.theta), balls[i].radius()), steps[i], 0});
    return out;
  }
  BigInt max_step = 0;
  for (const auto& n : steps) max_step = std::max(max_step, n);
  const std::size_t bits = angle_bits(max_step);
  const FixedPoint theta = s.rotation_angle_fixed(bits);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    Rational shift = theta.times(steps[i]).to_rational();
    out.push_back({Arc(frac(balls[i].center() - shift), balls[i].radius()), steps[i], Rational(steps[i]) * pow2(-static_cast<int>(bits))});
  }
  return out;
}

std::string to_string(RecurrenceStatus s) {
  switch (s) {
    case RecurrenceStatus::Complete: return "complete";
    case RecurrenceStatus::Periodic: return "periodic";
    case RecurrenceStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

namespace {

// Appends (n, d) when d improves on every earlier distance; reports whether the scan should stop.
bool record(RecurrenceTimes& out, const BigInt& n, const Rational& d, std::size_t count) {
  if (!out.distances.empty() && d >= out.distances.back()) return false;
  out.times.push_back(n);
  out.distances.push_back(d);
  if (d == 0) {
    out.status = RecurrenceStatus::Periodic;
    return true;
  }
  if (out.times.size() == count) {
    out.status = RecurrenceStatus::Complete;
    return true;
  }
  return false;
}

RecurrenceTimes scan(const SystemSpec& s, const CirclePoint& x, std::size_t count, std::uint64_t budget) {
  RecurrenceTimes out{x, {}, {}, RecurrenceStatus::BudgetExhausted, "scan"};
  if (const DenjoyMap* f = s.denjoy_map()) {
    const Rational* x0 = x.as_rational();
    if (!x0) throw BackendMismatch("the Denjoy map works in the rational backend");
    Rational y = *x0;
    for (std::uint64_t n = 1; n <= budget; ++n) {
      y = f->apply_inverse(y);
      if (record(out, BigInt(n), dist(y, *x0), count)) return out;
    }
    return out;
  }
  const Rotation& r = *s.rotation_data();
  // d(x - n theta, x) = ||n theta|| does not depend on x.
  if (!r.irrational) {
    Rational y = 0;
    for (std::uint64_t n = 1; n <= budget; ++n) {
      y = frac(y - r.theta);
      if (record(out, BigInt(n), dist(y, Rational(0)), count)) return out;
    }
    return out;
  }
  const std::size_t bits = angle_bits(BigInt(budget));
  const FixedPoint theta = s.rotation_angle_fixed(bits);
  FixedPoint y(bits);
  FixedPoint best(bits);
  bool have_best = false;
  for (std::uint64_t n = 1; n <= budget; ++n) {
    y -= theta;
    FixedPoint d = y.distance_to_zero();
    if (have_best && d >= best) continue;
    best = d;
    have_best = true;
    if (record(out, BigInt(n), d.to_rational(), count)) return out;
  }
  return out;
}

RecurrenceTimes rotation_convergents(const SystemSpec& s, const CirclePoint& x, std::size_t count) {
  const Rotation& r = *s.rotation_data();
  RecurrenceTimes out{x, {}, {}, RecurrenceStatus::Complete, "continued_fraction"};
  std::vector<BigInt> a = r.irrational ? r.irrational->partial_quotients(count + 2) : partial_quotients(r.theta);
  std::vector<BigInt> qs = convergent_denominators(a);
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  if (qs.size() > count) qs.resize(count);
  if (!r.irrational) {
    for (const auto& q : qs)
      if (record(out, q, dist(frac(Rational(q) * r.theta), Rational(0)), count)) break;
    return out;
  }
  const std::size_t bits = angle_bits(qs.back());
  const FixedPoint theta = s.rotation_angle_fixed(bits);
  for (const auto& q : qs) out.times.push_back(q), out.distances.push_back(theta.times(q).distance_to_zero().to_rational());
  return out;
}

RecurrenceTimes denjoy_convergents(const SystemSpec& s, const CirclePoint& x, std::size_t count) {
  const DenjoyMap& f = *need_denjoy(s).map;
  const Rational* x0 = x.as_rational();
  if (!x0) throw BackendMismatch("the Denjoy map works in the rational backend");
  RecurrenceTimes out{x, {}, {}, RecurrenceStatus::BudgetExhausted, "semiconjugate_convergents"};
  std::vector<BigInt> qs = convergent_denominators(partial_quotients(f.params().theta));
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  for (const auto& q : qs)
    if (record(out, q, dist(f.power(*x0, -q), *x0), count)) break;
  return out;
}

}  // namespace

RecurrenceTimes recurrence_times(const SystemSpec& s, const CirclePoint& x, std::size_t count,
                                 const RecurrenceOptions& opts) {
  need_invertible(s);
  if (count == 0) throw DomainError("count must be positive");
  if (opts.method == RecurrenceMethod::Scan) return scan(s, x, count, opts.budget);
  if (s.denjoy_map()) return denjoy_convergents(s, x, count);
  return rotation_convergents(s, x, count);
}

Rational rotation_number_estimate(const SystemSpec& s, std::uint64_t iterations) {
  need_invertible(s);
  if (iterations == 0) throw DomainError("iterations must be positive");
  std::function<Rational(const Rational&)> step;
  if (const DenjoyMap* f = s.denjoy_map()) {
    step = [f](const Rational& x) { return f->apply(x); };
  } else {
    const Rotation& r = *s.rotation_data();
    Rational theta = r.irrational ? s.rotation_angle_fixed(192).to_rational() : r.theta;
    step = [theta](const Rational& x) { return frac(x + theta); };
  }
  // The lift F with F(0) = f(0) in [0, 1) maps [0, 1) into [f(0), 1 + f(0)).
  const Rational d0 = step(Rational(0));
  Rational x = 0, displacement = 0;
  for (std::uint64_t i = 0; i < iterations; ++i) {
    Rational y = step(x);
    displacement += (y >= d0 ? y : y + 1) - x;
    x = std::move(y);
  }
  return displacement / iterations;
}

}  // namespace stp
