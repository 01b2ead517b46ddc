#include "doctest.h"

#include "stp/errors.hpp"
#include "stp/radius_sequences.hpp"

using namespace stp;

namespace {

Rational q(long long p, long long d = 1) { return Rational(p, d); }

RadiusSequence half_harmonic() { return RadiusSequence::monotone(RadiusProfile::power(q(1, 2), q(1))); }

std::vector<CircleMeasure> lebesgue(std::size_t n) { return std::vector<CircleMeasure>(n, CircleMeasure::lebesgue()); }

}  // namespace

TEST_CASE("sqrt-rational values") {
  auto a = SqrtRational::sqrt(q(1, 4));
  CHECK(a.rational() == q(1, 2));
  auto b = SqrtRational::sqrt(q(2));
  CHECK_FALSE(b.rational());
  CHECK(b.lower(64) < b.upper(64));
  CHECK(b.upper(64) - b.lower(64) == pow2(-64));
  CHECK((b * b).rational() == q(2));
  CHECK(b.scaled(q(3)).square() == q(18));
  CHECK(SqrtRational::parse("sqrt(2)") == b);
  CHECK(SqrtRational::parse("3/4") == SqrtRational::of(q(3, 4)));
  CHECK(b.str() == "sqrt(2)");
  CHECK_THROWS_AS(SqrtRational::of(q(-1)), DomainError);
}

TEST_CASE("polynomial specs") {
  PolynomialSpec curve{{{0, 1}, {0, 0, 1}}, 1};
  CHECK_NOTHROW(curve.validate());
  CHECK(curve.point(BigInt(3)) == std::vector<BigInt>{3, 9});
  CHECK(curve.solve(1, BigInt(49)) == BigInt(7));
  CHECK_FALSE(curve.solve(1, BigInt(50)));

  CHECK_THROWS_AS((PolynomialSpec{{{5}}, 1}.validate()), DomainError);
  CHECK_THROWS_AS((PolynomialSpec{{{0, -1}}, 1}.validate()), DomainError);
  // q^2 - 10 q + 30 dips before increasing.
  CHECK_THROWS_AS((PolynomialSpec{{{30, -10, 1}}, 1}.validate()), DomainError);
  CHECK_NOTHROW((PolynomialSpec{{{30, -10, 1}}, 5}.validate()));
  CHECK_THROWS_AS((PolynomialSpec{{{-3, 1}}, 1}.validate()), DomainError);
}

TEST_CASE("polynomial supported sequences") {
  auto r1 = make_polynomial_supported(PolynomialSpec::identity(), RadiusProfile::power(q(1, 2), q(1)));
  for (long long k = 1; k <= 50; ++k) CHECK(r1.eval(SemigroupIndex{k}) == SqrtRational::of(q(1, 2 * k)));
  CHECK(r1.weakly_decreasing(BigInt(1000)));

  PolynomialSpec curve{{{0, 1}, {0, 0, 1}}, 1};
  auto profile = RadiusProfile::power(q(1, 2), q(1, 2));
  auto r2 = make_polynomial_supported(curve, profile);
  CHECK(r2.eval(SemigroupIndex{2, 4}) == profile(BigInt(2)));
  CHECK(r2.eval(SemigroupIndex{2, 3}).is_zero());
  CHECK(r2.eval(SemigroupIndex{3, 4}).is_zero());

  auto sup = r2.support(BigInt(200));
  CHECK(sup.size() == 200);
  for (std::size_t i = 0; i < sup.size(); ++i) {
    CHECK(sup[i].index == SemigroupIndex(curve.point(sup[i].ordinal)));
    CHECK(r2.eval(sup[i].index) == sup[i].radius);
    if (i > 0) CHECK(sup[i - 1].index != sup[i].index);
  }

  for (auto c : {q(1, 4), q(1), q(4)}) {
    auto scaled = RadiusSequence::scaled(c, r2);
    CHECK(scaled.weakly_decreasing(BigInt(100)));
    CHECK(scaled.eval(SemigroupIndex{5, 25}) == profile(BigInt(5)).scaled(c));
    CHECK(scaled.curve_view()->scale == c);
  }
  CHECK_THROWS_AS(make_polynomial_supported(curve, RadiusProfile::table({SqrtRational::of(q(1, 4)), SqrtRational::of(q(1, 2))})),
                  DomainError);
}

TEST_CASE("partial measure sums") {
  auto r = half_harmonic();
  auto m = lebesgue(1);
  auto s1 = partial_measure_sum(m, {q(0)}, r, 1, BigInt(4));
  CHECK(s1.value == q(25, 12));
  CHECK(s1.exact);
  CHECK(s1.divergence == Divergence::Divergent);
  auto s2 = partial_measure_sum(m, {q(0)}, r, 2, BigInt(4));
  CHECK(s2.value == q(205, 144));
  CHECK(s2.divergence == Divergence::Convergent);

  auto zero = RadiusSequence::monotone(RadiusProfile::power(q(0), q(0)));
  CHECK(partial_measure_sum(m, {q(0)}, zero, 1, BigInt(100)).value == 0);

  // psi(q) = 1/q on the (q, q^2) curve with R_q = 1/(2 sqrt q).
  auto curve = make_polynomial_supported(PolynomialSpec{{{0, 1}, {0, 0, 1}}, 1}, RadiusProfile::power(q(1, 2), q(1, 2)));
  auto m2 = lebesgue(2);
  auto s = partial_measure_sum(m2, {q(0), q(0)}, curve, 1, BigInt(4));
  CHECK(s.value == q(25, 12));
  CHECK(s.exact);
  CHECK(s.divergence == Divergence::Divergent);
}

TEST_CASE("counterexample sequence") {
  auto rot = SystemSpec::rotation(QuadraticIrrational::golden());
  auto times = recurrence_times(rot, CirclePoint::exact(q(0)), 30);
  auto lebesgue_m = CircleMeasure::lebesgue();
  auto r = make_counterexample(lebesgue_m, q(0), times);
  auto sup = r.support(BigInt(1000));
  CHECK(sup.size() == 30);
  for (const auto& e : sup) CHECK(e.radius == SqrtRational::of(Rational(1) / Rational(e.ordinal)));
  CHECK(r.eval(SemigroupIndex{4}).is_zero());
  CHECK(r.eval(SemigroupIndex{5}) == SqrtRational::of(q(1, 4)));

  std::vector<CircleMeasure> m{lebesgue_m};
  auto sum = partial_measure_sum(m, {q(0)}, r, 1, BigInt(30));
  Rational harmonic = 0;
  for (long long k = 1; k <= 30; ++k) harmonic += q(1, k);
  CHECK(sum.value >= harmonic - 1);  // the k = 1 ball is clamped to mass 1
  CHECK(sum.divergence == Divergence::Divergent);

  auto cantor = CircleMeasure::cantor();
  auto rc = make_counterexample(cantor, q(1, 3), times);
  auto csup = rc.support(BigInt(1000));
  for (std::size_t i = 1; i < csup.size(); ++i) CHECK(csup[i].radius <= csup[i - 1].radius);
  std::vector<CircleMeasure> cm{cantor};
  auto csum = partial_measure_sum(cm, {q(1, 3)}, rc, 1, BigInt(30));
  CHECK(csum.value + csum.error_bound >= harmonic);
  CHECK_THROWS_AS(make_counterexample(cantor, q(1, 2), times), DomainError);
}

TEST_CASE("equivalence") {
  auto r = half_harmonic();
  auto e = equivalence_check(r, r, BigInt(500));
  CHECK(e.equivalent);
  CHECK(*e.c1 == SqrtRational::of(1));
  CHECK(*e.c2 == SqrtRational::of(1));

  auto r2 = RadiusSequence::scaled(q(2), r);
  auto e2 = equivalence_check(r, r2, BigInt(500));
  CHECK(e2.equivalent);
  CHECK(*e2.c1 == SqrtRational::of(q(1, 2)));
  CHECK(*e2.c2 == SqrtRational::of(q(1, 2)));

  // Symmetry and transitivity on a triple.
  auto r3 = RadiusSequence::scaled(q(3), r2);
  auto ab = equivalence_check(r, r2, BigInt(300));
  auto ba = equivalence_check(r2, r, BigInt(300));
  CHECK(ba.c1->square() * ab.c2->square() == 1);
  CHECK(ba.c2->square() * ab.c1->square() == 1);
  auto bc = equivalence_check(r2, r3, BigInt(300));
  auto ac = equivalence_check(r, r3, BigInt(300));
  CHECK(*ac.c1 == *ab.c1 * *bc.c1);
  CHECK(*ac.c2 == *ab.c2 * *bc.c2);

  auto inv = RadiusSequence::monotone(RadiusProfile::power(q(1), q(1)));
  auto inv_sq = RadiusSequence::monotone(RadiusProfile::power(q(1), q(2)));
  auto fail = equivalence_check(inv, inv_sq, BigInt(2000), {10, 1000});
  CHECK_FALSE(fail.equivalent);
  CHECK(fail.witness);
  CHECK(*fail.c2 == SqrtRational::of(2000));

  auto curve = make_polynomial_supported(PolynomialSpec{{{0, 1}, {0, 0, 1}}, 1}, RadiusProfile::power(q(1), q(1)));
  CHECK_FALSE(equivalence_check(inv, curve, BigInt(10)).equivalent);
}
