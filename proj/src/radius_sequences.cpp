#include "stp/radius_sequences.hpp"

#include "stp/errors.hpp"

#include <algorithm>

namespace stp {

std::string to_string(SemigroupKind k) {
  switch (k) {
    case SemigroupKind::Additive: return "additive";
    case SemigroupKind::Multiplicative: return "multiplicative";
    case SemigroupKind::Product: return "product";
  }
  return "unknown";
}

std::string to_string(Divergence d) {
  switch (d) {
    case Divergence::Divergent: return "divergent";
    case Divergence::Convergent: return "convergent";
    case Divergence::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(RadiusSequence::Kind k) {
  switch (k) {
    case RadiusSequence::Kind::Monotone: return "monotone";
    case RadiusSequence::Kind::PolynomialSupported: return "polynomial_supported";
    case RadiusSequence::Kind::ShrinkingOnSubset: return "shrinking_on_subset";
    case RadiusSequence::Kind::Scaled: return "scaled";
    case RadiusSequence::Kind::Custom: return "custom";
  }
  return "unknown";
}

RadiusSequence RadiusSequence::monotone(RadiusProfile profile, SemigroupKind semigroup) {
  if (semigroup == SemigroupKind::Product) throw DomainError("monotone sequences live on N");
  if (!profile.weakly_decreasing_from(BigInt(1))) throw DomainError("monotone profile is not weakly decreasing");
  return RadiusSequence(Monotone{std::move(profile), semigroup});
}

RadiusSequence RadiusSequence::shrinking_on_subset(std::vector<BigInt> times, std::vector<SqrtRational> values,
                                                   bool harmonic_lower_bound) {
  if (times.size() != values.size()) throw DomainError("one value per time is required");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 1) throw DomainError("times must be positive");
    if (i > 0 && times[i] <= times[i - 1]) throw DomainError("times must be strictly increasing");
  }
  return RadiusSequence(Subset{std::move(times), std::move(values), harmonic_lower_bound});
}

RadiusSequence RadiusSequence::scaled(const Rational& factor, const RadiusSequence& inner) {
  if (factor <= 0) throw DomainError("scale factor must be positive");
  return RadiusSequence(Scaled{factor, std::make_shared<const RadiusSequence>(inner)});
}

RadiusSequence RadiusSequence::custom(Custom c) {
  if (!c.eval || !c.support) throw DomainError("custom sequence needs eval and support");
  if (c.dim == 0) throw DomainError("dimension must be positive");
  return RadiusSequence(std::move(c));
}

SemigroupKind RadiusSequence::semigroup() const {
  return std::visit(
      [](const auto& v) -> SemigroupKind {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Monotone>) return v.semigroup;
        else if constexpr (std::is_same_v<T, Polynomial>)
          return v.spec.dim() == 1 ? SemigroupKind::Multiplicative : SemigroupKind::Product;
        else if constexpr (std::is_same_v<T, Subset>) return SemigroupKind::Additive;
        else if constexpr (std::is_same_v<T, Scaled>) return v.inner->semigroup();
        else return v.semigroup;
      },
      v_);
}

std::size_t RadiusSequence::dim() const {
  if (const auto* p = std::get_if<Polynomial>(&v_)) return p->spec.dim();
  if (const auto* s = std::get_if<Scaled>(&v_)) return s->inner->dim();
  if (const auto* c = std::get_if<Custom>(&v_)) return c->dim;
  return 1;
}

SqrtRational RadiusSequence::eval(const SemigroupIndex& g) const {
  if (g.dim() != dim()) throw DomainError("index dimension does not match the sequence");
  return std::visit(
      [&](const auto& v) -> SqrtRational {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Monotone>) {
          return v.profile(g[0]);
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          auto q = v.spec.solve(0, g[0]);
          if (!q || v.spec.point(*q) != g.components()) return {};
          return v.profile(*q);
        } else if constexpr (std::is_same_v<T, Subset>) {
          auto it = std::lower_bound(v.times.begin(), v.times.end(), g[0]);
          if (it == v.times.end() || *it != g[0]) return {};
          return v.values[static_cast<std::size_t>(it - v.times.begin())];
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return v.inner->eval(g).scaled(v.factor);
        } else {
          return v.eval(g);
        }
      },
      v_);
}

void RadiusSequence::for_each_support(const BigInt& horizon, const std::function<bool(const SupportEntry&)>& f) const {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Monotone>) {
          BigInt end = horizon;
          if (v.profile.kind() == RadiusProfile::Kind::Table)
            end = std::min(end, v.profile.first() + v.profile.values().size() - 1);
          for (BigInt n = 1; n <= end; ++n) {
            SqrtRational r = v.profile(n);
            if (r.is_zero()) continue;
            if (!f(SupportEntry{n, SemigroupIndex({n}), std::move(r)})) return;
          }
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          BigInt end = horizon;
          if (v.profile.kind() == RadiusProfile::Kind::Table)
            end = std::min(end, v.profile.first() + v.profile.values().size() - 1);
          for (BigInt q = v.spec.start; q <= end; ++q) {
            SqrtRational r = v.profile(q);
            if (r.is_zero()) continue;
            if (!f(SupportEntry{q, SemigroupIndex(v.spec.point(q)), std::move(r)})) return;
          }
        } else if constexpr (std::is_same_v<T, Subset>) {
          for (std::size_t k = 1; k <= v.times.size() && BigInt(k) <= horizon; ++k) {
            if (v.values[k - 1].is_zero()) continue;
            if (!f(SupportEntry{BigInt(k), SemigroupIndex({v.times[k - 1]}), v.values[k - 1]})) return;
          }
        } else if constexpr (std::is_same_v<T, Scaled>) {
          v.inner->for_each_support(horizon, [&](const SupportEntry& e) {
            return f(SupportEntry{e.ordinal, e.index, e.radius.scaled(v.factor)});
          });
        } else {
          v.support(horizon, f);
        }
      },
      v_);
}

std::vector<SupportEntry> RadiusSequence::support(const BigInt& horizon) const {
  std::vector<SupportEntry> out;
  for_each_support(horizon, [&](const SupportEntry& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

std::optional<RadiusSequence::CurveView> RadiusSequence::curve_view() const {
  if (const auto* m = std::get_if<Monotone>(&v_)) return CurveView{PolynomialSpec::identity(), m->profile, 1};
  if (const auto* p = std::get_if<Polynomial>(&v_)) return CurveView{p->spec, p->profile, 1};
  if (const auto* s = std::get_if<Scaled>(&v_)) {
    auto inner = s->inner->curve_view();
    if (inner) inner->scale *= s->factor;
    return inner;
  }
  return std::nullopt;
}

bool RadiusSequence::weakly_decreasing(const BigInt& horizon) const {
  const bool contiguous = kind() == Kind::Monotone;
  std::optional<SupportEntry> prev;
  bool ok = true;
  for_each_support(horizon, [&](const SupportEntry& e) {
    if (prev && (e.radius > prev->radius || (contiguous && e.ordinal != prev->ordinal + 1))) {
      ok = false;
      return false;
    }
    prev = e;
    return true;
  });
  return ok;
}

RadiusSequence make_polynomial_supported(const PolynomialSpec& spec, const RadiusProfile& profile) {
  spec.validate();
  if (!profile.weakly_decreasing_from(spec.start)) throw DomainError("profile is not weakly decreasing from N0");
  return RadiusSequence(RadiusSequence::Polynomial{spec, profile});
}

RadiusSequence make_counterexample(const CircleMeasure& m, const Rational& x, const RecurrenceTimes& times,
                                   const ProbeOptions& opts) {
  if (!support_contains(m, x, opts.tol)) throw DomainError(to_string(x) + " is not in the support of the measure");
  std::vector<SqrtRational> values;
  values.reserve(times.times.size());
  for (std::size_t k = 1; k <= times.times.size(); ++k) values.push_back(SqrtRational::of(2 * t_sequence(m, x, k, opts)));
  return RadiusSequence::shrinking_on_subset(times.times, std::move(values), true);
}

SqrtRational ball_mass(const CircleMeasure& m, const Rational& center, const SqrtRational& radius) {
  if (radius.square() >= Rational(1, 4)) return SqrtRational::of(1);
  if (auto r = radius.rational()) return SqrtRational::of(m.ball_mass(center, *r));
  if (m.kind() == CircleMeasure::Kind::Lebesgue) return SqrtRational::sqrt(4 * radius.square());
  throw DomainError("irrational radius " + radius.str() + " needs the Lebesgue measure");
}

namespace {

constexpr unsigned kTermBits = 256;

Divergence analytic_divergence(std::span<const CircleMeasure> measures, const RadiusSequence& r, unsigned s) {
  if (const auto* sub = std::get_if<RadiusSequence::Subset>(&r.variant()))
    return sub->harmonic_lower_bound && s == 1 ? Divergence::Divergent : Divergence::Unknown;
  auto view = r.curve_view();
  if (!view || view->profile.kind() != RadiusProfile::Kind::Power) return Divergence::Unknown;
  for (const auto& m : measures)
    if (m.kind() != CircleMeasure::Kind::Lebesgue) return Divergence::Unknown;
  if (view->profile.coefficient() == 0) return Divergence::Convergent;
  // psi(q) ~ q^{-n e}, so the series behaves like sum q^{-n e s}.
  Rational p = Rational(view->spec.dim()) * view->profile.exponent() * s;
  return p <= 1 ? Divergence::Divergent : Divergence::Convergent;
}

}  // namespace

void MeasureSumBuilder::add(const SqrtRational& psi, unsigned s, const Rational& psi_error) {
  SqrtRational term = psi.pow(s);
  if (auto exact = term.rational()) {
    pending_.push_back(std::move(*exact));
  } else {
    pending_.push_back(term.lower(kTermBits));
    sum_.error_bound += pow2(-static_cast<int>(kTermBits));
    sum_.exact = false;
  }
  if (psi_error > 0) {
    sum_.error_bound += psi_error * s;
    sum_.exact = false;
  }
  ++sum_.terms;
}

MeasureSum MeasureSumBuilder::snapshot() {
  if (!pending_.empty()) {
    pending_.push_back(sum_.value);
    sum_.value = sum_exact(std::move(pending_));
    pending_.clear();
  }
  return sum_;
}

MeasureSum partial_measure_sum(std::span<const CircleMeasure> measures, const std::vector<Rational>& x,
                               const RadiusSequence& r, unsigned s, const BigInt& horizon) {
  if (s < 1) throw DomainError("exponent s must be >= 1");
  if (measures.size() != r.dim() || x.size() != r.dim()) throw DomainError("one measure and one center per coordinate");
  MeasureSumBuilder out(analytic_divergence(measures, r, s));
  Rational psi_error = 0;
  for (const auto& m : measures) psi_error += 2 * m.error_bound();
  r.for_each_support(horizon, [&](const SupportEntry& e) {
    SqrtRational psi = SqrtRational::of(1);
    for (std::size_t j = 0; j < measures.size(); ++j) psi = psi * ball_mass(measures[j], x[j], e.radius);
    out.add(psi, s, psi_error);
    return true;
  });
  return out.snapshot();
}

EquivalenceResult equivalence_check(const RadiusSequence& r, const RadiusSequence& s, const BigInt& horizon,
                                    const EquivalenceOptions& opts) {
  EquivalenceResult out;
  if (r.dim() != s.dim() || r.semigroup() != s.semigroup()) {
    out.reason = "sequences live on different semigroups";
    return out;
  }
  auto a = r.support(horizon), b = s.support(horizon);
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    if (i >= a.size() || i >= b.size() || a[i].index != b[i].index) {
      out.reason = "supports differ";
      out.witness = to_string(i < a.size() ? a[i].index : b[i].index);
      return out;
    }
  }
  std::size_t at_min = 0, at_max = 0;
  for (std::size_t i = opts.ignore_prefix; i < a.size(); ++i) {
    SqrtRational ratio = a[i].radius / b[i].radius;
    if (!out.c1 || ratio < *out.c1) out.c1 = ratio, at_min = i;
    if (!out.c2 || ratio > *out.c2) out.c2 = ratio, at_max = i;
    ++out.compared;
  }
  if (out.compared == 0) {
    out.reason = "no support beyond the ignored prefix";
    return out;
  }
  const Rational t2 = opts.threshold * opts.threshold;
  if (out.c2->square() > t2) {
    out.reason = "ratio unbounded: exceeds the threshold";
    out.witness = to_string(a[at_max].index);
  } else if (out.c1->square() * t2 < 1) {
    out.reason = "ratio tends to zero: below the inverse threshold";
    out.witness = to_string(a[at_min].index);
  } else if ((*out.c2 / *out.c1).square() > t2) {
    out.reason = "ratio spread exceeds the threshold";
    out.witness = to_string(a[at_max].index);
  } else {
    out.equivalent = true;
    out.reason = "equivalent up to horizon " + horizon.str();
  }
  return out;
}

}  // namespace stp
