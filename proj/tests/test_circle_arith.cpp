#include "doctest.h"

#include "stp/arc_union.hpp"
#include "stp/circle.hpp"
#include "stp/continued_fraction.hpp"
#include "stp/errors.hpp"

#include <algorithm>
#include <random>

using namespace stp;

namespace {

Rational q(long long p, long long d = 1) { return Rational(p, d); }
CirclePoint pt(long long p, long long d = 1) { return CirclePoint::exact(q(p, d)); }

std::vector<Rational> rational_grid(int max_den) {
  std::vector<Rational> out;
  for (int d = 1; d <= max_den; ++d)
    for (int p = 0; p < d; ++p) out.push_back(q(p, d));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Arc random_arc(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(0, 999);
  return Arc(q(num(rng), 1000), q(num(rng) % 400, 1000));
}

}  // namespace

TEST_CASE("dist examples") {
  CHECK(dist(CirclePoint::parse("0.1"), CirclePoint::parse("0.9")) == q(1, 5));
  CHECK(dist(pt(3, 7), pt(3, 7)) == 0);
  CHECK(dist(pt(0), pt(1, 2)) == q(1, 2));
}

TEST_CASE("dist is a bounded metric on a rational grid") {
  auto grid = rational_grid(12);
  for (const auto& x : grid) {
    for (const auto& y : grid) {
      Rational dxy = dist(x, y);
      CHECK(dxy == dist(y, x));
      CHECK(dxy >= 0);
      CHECK(dxy <= q(1, 2));
      CHECK((dxy == 0) == (x == y));
    }
  }
  // Triangle inequality on a coarser grid keeps the cube small.
  auto small = rational_grid(7);
  for (const auto& x : small)
    for (const auto& y : small)
      for (const auto& z : small) CHECK(dist(x, z) <= dist(x, y) + dist(y, z));
}

TEST_CASE("act and compose") {
  CHECK(act(SemigroupIndex{3}, TorusPoint{pt(1, 7)}) == TorusPoint{pt(3, 7)});
  CHECK(compose(SemigroupIndex{2, 3}, SemigroupIndex{4, 5}) == SemigroupIndex{8, 15});
  TorusPoint a{pt(2, 9), pt(5, 11)};
  CHECK(act(SemigroupIndex::identity(2), a) == a);
  CHECK_THROWS_AS(act(SemigroupIndex{2}, a), DomainError);
  CHECK_THROWS_AS(SemigroupIndex({0, 1}), DomainError);
}

TEST_CASE("semigroup action law") {
  std::vector<Rational> alphas = {q(1, 7), q(5, 13), q(22, 97), q(0), q(1, 2)};
  for (long long k1 = 1; k1 <= 6; ++k1)
    for (long long k2 = 1; k2 <= 6; ++k2)
      for (long long l1 = 1; l1 <= 5; ++l1)
        for (long long l2 = 1; l2 <= 5; ++l2)
          for (const auto& a1 : alphas) {
            TorusPoint alpha{CirclePoint::exact(a1), CirclePoint::exact(a1 * 3)};
            SemigroupIndex k{k1, k2}, l{l1, l2};
            CHECK(act(compose(k, l), alpha) == act(k, act(l, alpha)));
          }
}

TEST_CASE("ball membership is strict") {
  CHECK(ball_contains(Arc(q(0), q(1, 5)), pt(9, 10)));
  CHECK_FALSE(ball_contains(Arc(q(1, 2), q(1, 10)), CirclePoint::parse("0.61")));
  CHECK_FALSE(ball_contains(Arc(q(1, 2), q(1, 10)), CirclePoint::parse("0.6")));
  for (const auto& x : rational_grid(9)) {
    Arc half(x, q(1, 2));
    CHECK_FALSE(ball_contains(half, x + q(1, 2)));
    CHECK(ball_contains(half, x));
    CHECK(ball_contains(half, x + q(1, 2) - q(1, 1000)));
  }
  CHECK_FALSE(ball_contains(Arc(q(1, 3), q(0)), pt(1, 3)));
}

TEST_CASE("radius above one half is clamped") {
  Arc big(q(1, 4), q(3));
  CHECK(big.radius() == q(1, 2));
  CHECK_FALSE(ball_contains(big, pt(3, 4)));
  std::vector<Arc> one{big};
  CHECK(union_measure(one) == 1);
}

TEST_CASE("union_measure examples") {
  std::vector<Arc> overlap{Arc::from_endpoints(q(0), q(1, 5)), Arc::from_endpoints(q(1, 10), q(3, 10))};
  CHECK(union_measure(overlap) == q(3, 10));
  std::vector<Arc> disjoint{Arc::from_endpoints(q(0), q(1, 10)), Arc::from_endpoints(q(1, 2), q(3, 5))};
  CHECK(union_measure(disjoint) == q(1, 5));
  std::vector<Arc> wrap{Arc::from_endpoints(q(9, 10), q(1, 10))};
  CHECK(union_measure(wrap) == q(1, 5));
  CHECK(union_measure(std::vector<Arc>{}) == 0);
  std::vector<Arc> half{Arc(q(3, 10), q(1, 2))};
  CHECK(union_measure(half) == 1);
}

TEST_CASE("union_measure properties on random arc families") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Arc> arcs;
    int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) arcs.push_back(random_arc(rng));
    Rational total_len = 0;
    for (const auto& a : arcs) total_len += a.length();
    Rational u = union_measure(arcs);
    CHECK(u <= total_len);
    CHECK(u <= 1);

    bool disjoint = true;
    for (std::size_t i = 0; i < arcs.size(); ++i)
      for (std::size_t j = i + 1; j < arcs.size(); ++j)
        if (!arcs[i].empty() && !arcs[j].empty() &&
            dist(arcs[i].center(), arcs[j].center()) < arcs[i].radius() + arcs[j].radius())
          disjoint = false;
    CHECK((u == total_len) == disjoint);

    auto shuffled = arcs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(union_measure(shuffled) == u);

    ArcUnion incremental;
    for (const auto& a : shuffled) incremental.insert(a);
    CHECK(incremental.measure() == u);
  }
}

TEST_CASE("arc center and endpoint forms round-trip") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Arc a = random_arc(rng);
    if (a.empty()) continue;
    Arc b = Arc::from_endpoints(a.start(), a.end());
    CHECK(b == a);
  }
  Arc full = Arc::from_endpoints(q(1, 5), q(1, 5));
  CHECK(full.radius() == q(1, 2));
  CHECK(full.start() == q(1, 5));
}

TEST_CASE("half-interval classification") {
  CHECK(half_interval_side(pt(0), CirclePoint::parse("0.75")) == Side::Left);
  CHECK(half_interval_side(pt(0), pt(0)) == Side::Center);
  CHECK(half_interval_side(pt(0), pt(1, 4)) == Side::Right);
  CHECK(half_interval_side(pt(1, 10), pt(3, 5)) == Side::Antipode);
  CHECK(ordered_less(q(0), q(4, 5), q(9, 10)));
  CHECK_FALSE(ordered_less(q(0), q(1, 10), q(9, 10)));
  CHECK_THROWS_AS(ordered_less(q(0), q(1, 2), q(1, 10)), DomainError);
}

TEST_CASE("fixed-point backend") {
  auto a = CirclePoint::fixed(q(1, 3), 128);
  CHECK(a.backend() == Backend::Fixed);
  CHECK(a.bits() == 128);
  // Rounded down: within one unit of 1/3.
  CHECK(q(1, 3) - a.value() < pow2(-128));
  CHECK(a.value() <= q(1, 3));

  auto three = a.times(3);
  CHECK(dist(three.value(), q(0)) < 3 * pow2(-128));

  auto sum = a + CirclePoint::fixed(q(3, 4), 128);
  CHECK(sum.value() == frac(a.value() + q(3, 4)));

  CHECK_THROWS_AS(a + pt(1, 3), BackendMismatch);
  CHECK_THROWS_AS(a.times(BigInt(1) << 70, 64), PrecisionExhausted);
  CHECK_NOTHROW(a.times(BigInt(1) << 60, 64));
  CHECK_THROWS_AS(FixedPoint(100), DomainError);

  // Negative multipliers and big multipliers agree with exact arithmetic on the dyadic value.
  auto x = FixedPoint::from_rational(q(123456789, 1000000007), 192);
  BigInt k = (BigInt(1) << 100) + 12345;
  CHECK(x.times(k).to_rational() == frac(x.to_rational() * Rational(k)));
  CHECK(x.times(BigInt(-7)).to_rational() == frac(x.to_rational() * -7));
  CHECK(dist(CirclePoint::fixed(x), CirclePoint::fixed(-x)) == dist(x.to_rational(), frac(-x.to_rational())));
}

TEST_CASE("fixed kernel distance matches exact distance") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    FixedPoint a(128), b(128), out(128);
    for (auto& l : a.limbs()) l = rng();
    for (auto& l : b.limbs()) l = rng();
    fixed_kernel::circle_dist(a.limbs(), b.limbs(), out.limbs());
    CHECK(out.to_rational() == dist(a.to_rational(), b.to_rational()));
  }
}

TEST_CASE("continued fractions") {
  auto golden = QuadraticIrrational::golden();
  auto a = golden.partial_quotients(8);
  CHECK(a[0] == 0);
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] == 1);
  auto qs = convergent_denominators(a);
  std::vector<BigInt> fib = {1, 1, 2, 3, 5, 8, 13, 21};
  CHECK(qs == fib);

  auto sqrt2 = QuadraticIrrational(BigInt(0), BigInt(2), BigInt(1)).partial_quotients(6);
  CHECK(sqrt2 == std::vector<BigInt>{1, 2, 2, 2, 2, 2});

  CHECK(partial_quotients(q(415, 93)) == std::vector<BigInt>{4, 2, 6, 7});
  CHECK(golden.to_fixed(256).to_rational() < Rational(golden.to_double() + 1e-12));
  CHECK(std::abs(golden.to_fixed(256).to_double() - 0.6180339887498949) < 1e-15);
}
