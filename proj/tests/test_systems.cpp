#include "doctest.h"

#include "stp/errors.hpp"
#include "stp/measures.hpp"
#include "stp/systems.hpp"

#include <random>

using namespace stp;

namespace {

Rational q(long long p, long long d = 1) { return Rational(p, d); }
CirclePoint pt(const char* s) { return CirclePoint::parse(s); }

std::shared_ptr<const DenjoyMap> default_denjoy() {
  DenjoyParams p;
  p.theta = golden_convergent(BigInt(1000000));
  return DenjoyMap::build(p);
}

std::vector<BigInt> big(std::initializer_list<long long> xs) { return std::vector<BigInt>(xs.begin(), xs.end()); }

}  // namespace

TEST_CASE("forward examples") {
  CHECK(forward(SystemSpec::mult_expanding(), SemigroupIndex{4}, TorusPoint{pt("0.3")}) == TorusPoint{pt("0.2")});
  CHECK(forward(SystemSpec::rotation(q(1, 4)), SemigroupIndex{3}, TorusPoint{pt("0.9")}) == TorusPoint{pt("0.65")});
  CHECK(forward(SystemSpec::simult_expanding(2), SemigroupIndex{2, 3}, TorusPoint{pt("0.4"), pt("0.5")}) ==
        TorusPoint{pt("0.8"), pt("0.5")});
  CHECK_THROWS_AS(forward(SystemSpec::simult_expanding(2), SemigroupIndex{2}, TorusPoint{pt("0.4")}), DomainError);
}

TEST_CASE("expanding semigroup law") {
  auto s = SystemSpec::simult_expanding(2);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    SemigroupIndex k{static_cast<long long>(1 + rng() % 20), static_cast<long long>(1 + rng() % 20)};
    SemigroupIndex l{static_cast<long long>(1 + rng() % 20), static_cast<long long>(1 + rng() % 20)};
    Rational x(static_cast<long long>(rng() % 997), 997), y(static_cast<long long>(rng() % 991), 991);
    TorusPoint a{CirclePoint::exact(x), CirclePoint::exact(y)};
    TorusPoint b{CirclePoint::fixed(x, 128), CirclePoint::fixed(y, 128)};
    CHECK(forward(s, compose(k, l), a) == forward(s, k, forward(s, l, a)));
    CHECK(forward(s, compose(k, l), b) == forward(s, k, forward(s, l, b)));
  }
}

TEST_CASE("expanding maps have no inverse") {
  auto s = SystemSpec::mult_expanding();
  CHECK_THROWS_AS(preimage_ball(s, BigInt(1), Arc(q(0), q(1, 10))), DomainError);
  CHECK_THROWS_AS(recurrence_times(s, pt("0"), 3), DomainError);
  CHECK_THROWS_AS(rotation_number_estimate(s, 10), DomainError);
}

TEST_CASE("rotation preimages are translated balls") {
  auto s = SystemSpec::rotation(q(2, 7));
  auto lebesgue = CircleMeasure::lebesgue();
  for (long long n = 0; n < 20; ++n) {
    Arc b(q(1, 3), q(1, 9));
    auto p = preimage_ball(s, BigInt(n), b);
    CHECK(p.arc == Arc(frac(q(1, 3) - q(2 * n, 7)), q(1, 9)));
    CHECK(p.arc.length() == b.length());
    CHECK(lebesgue.arc_mass(p.arc) == lebesgue.arc_mass(b));
  }
  CHECK(preimage_ball(s, BigInt(0), Arc(q(1, 5), q(1, 7))).arc == Arc(q(1, 5), q(1, 7)));

  auto golden = SystemSpec::rotation(QuadraticIrrational::golden());
  BigInt n = BigInt(1) << 300;
  auto p = preimage_ball(golden, n, Arc(q(0), q(1, 100)));
  CHECK(p.arc.radius() == q(1, 100));
  CHECK(p.error_bound <= pow2(-128));
}

TEST_CASE("golden rotation best returns") {
  auto s = SystemSpec::rotation(QuadraticIrrational::golden());
  auto cf = recurrence_times(s, pt("0"), 6);
  CHECK(cf.times == big({1, 2, 3, 5, 8, 13}));
  auto sc = recurrence_times(s, pt("0"), 6, {RecurrenceMethod::Scan, 10000});
  CHECK(sc.times == cf.times);
  CHECK(sc.status == RecurrenceStatus::Complete);
  for (std::size_t i = 1; i < sc.distances.size(); ++i) CHECK(sc.distances[i] < sc.distances[i - 1]);

  auto many = recurrence_times(s, pt("0"), 20, {RecurrenceMethod::Scan, 20000});
  auto many_cf = recurrence_times(s, pt("0"), 20);
  CHECK(many.times == many_cf.times);
}

TEST_CASE("period two rotation") {
  auto s = SystemSpec::rotation(q(1, 2));
  auto r = recurrence_times(s, pt("0.1"), 5, {RecurrenceMethod::Scan, 100});
  CHECK(r.times == big({1, 2}));
  CHECK(r.distances == std::vector<Rational>{q(1, 2), q(0)});
  CHECK(r.status == RecurrenceStatus::Periodic);
  CHECK(recurrence_times(s, pt("0.1"), 5).times == r.times);
}

TEST_CASE("scan and continued fractions agree on rational angles") {
  for (long long d = 2; d <= 60; ++d) {
    for (long long p = 1; p < d; ++p) {
      auto s = SystemSpec::rotation(q(p, d));
      auto a = recurrence_times(s, pt("0"), 50, {RecurrenceMethod::Scan, 1000});
      auto b = recurrence_times(s, pt("0"), 50);
      CHECK(a.times == b.times);
      CHECK(a.distances == b.distances);
    }
  }
}

TEST_CASE("scan budget exhaustion keeps partial results") {
  auto s = SystemSpec::rotation(QuadraticIrrational::golden());
  auto r = recurrence_times(s, pt("0"), 30, {RecurrenceMethod::Scan, 100});
  CHECK(r.status == RecurrenceStatus::BudgetExhausted);
  CHECK(r.times.size() == 10);
}

TEST_CASE("rotation number") {
  CHECK(rotation_number_estimate(SystemSpec::rotation(q(3, 11)), 100) == q(3, 11));
  CHECK(rotation_number_estimate(SystemSpec::rotation(q(0)), 100) == 0);
  auto f = default_denjoy();
  auto s = SystemSpec::denjoy(f);
  for (std::uint64_t n : {10, 100, 1000}) {
    Rational est = rotation_number_estimate(s, n);
    CHECK(abs(est - f->params().theta) <= Rational(2, static_cast<long long>(n)));
  }
}

TEST_CASE("denjoy system") {
  auto f = default_denjoy();
  auto s = SystemSpec::denjoy(f);
  CHECK(f->total_gap_length() == q(1, 2));

  // Phi increasing and h o Phi = identity on a grid.
  Rational prev = -1;
  for (long long i = 0; i < 1000; ++i) {
    Rational y(i, 1000);
    Rational e = f->embed(y);
    CHECK(e > prev);
    prev = e;
    CHECK(f->collapse(e) == y);
  }

  // Endpoints of I_n go to endpoints of I_{n+1}.
  for (long j = -10; j < 10; ++j) {
    CHECK(denjoy_apply(s, 1, CirclePoint::exact(f->gap_start(j))).value() == f->gap_start(j + 1));
    CHECK(denjoy_apply(s, 1, CirclePoint::exact(f->gap_start(j) + f->gap_length(j))).value() ==
          f->gap_start(j + 1) + f->gap_length(j + 1));
  }

  std::mt19937_64 rng(17);
  auto nu = CircleMeasure::denjoy(f);
  for (int i = 0; i < 200; ++i) {
    Rational x(static_cast<long long>(rng() % 100003), 100003);
    CirclePoint p = CirclePoint::exact(x);
    CHECK(denjoy_apply(s, -1, denjoy_apply(s, 1, p)) == p);
    Arc b(x, Rational(static_cast<long long>(1 + rng() % 400), 1000));
    BigInt n = static_cast<long long>(rng() % 5000);
    auto pre = preimage_ball(s, n, b);
    CHECK(abs(nu.arc_mass(pre.arc) - nu.arc_mass(b)) <= 4 * f->tail_bound());
  }
  CHECK_THROWS_AS(denjoy_apply(s, 2, pt("0.1")), DomainError);
  CHECK_THROWS_AS(denjoy_apply(s, 1, CirclePoint::fixed(q(1, 3), 128)), BackendMismatch);
}

TEST_CASE("denjoy recurrence") {
  auto f = default_denjoy();
  auto s = SystemSpec::denjoy(f);
  CirclePoint x = CirclePoint::exact(f->embed(q(1, 7)));
  auto cf = recurrence_times(s, x, 8);
  auto sc = recurrence_times(s, x, 8, {RecurrenceMethod::Scan, 100000});
  CHECK(cf.times.size() == 8);
  CHECK(sc.times == cf.times);
  for (std::size_t i = 1; i < cf.distances.size(); ++i) CHECK(cf.distances[i] < cf.distances[i - 1]);
}
