// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "runner.hpp"
#include "stp/errors.hpp"
#include "stp/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

using namespace stp;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

RadiusSequence half_harmonic() { return RadiusSequence::monotone(RadiusProfile::power(Rational(1, 2), 1)); }

Verdict kgs_consistency() {
  const auto t0 = Clock::now();
  TrialOptions opts{{1000, 10000, 100000}, 20};
  auto t = kgs_trial(SystemSpec::mult_expanding(), {0}, half_harmonic(), 100000, SampleSpec{200, 128, 7, 0}, opts);
  const double mean = t.stats.back().ratio.mean;
  const double secs = seconds_since(t0);
  const bool ok = mean >= 0.9 && mean <= 1.1 && t.median_exponent && *t.median_exponent <= 0.6 && secs <= 120;
  return {ok, "mean N/Psi=" + fmt("%.4f", mean) + " median exponent=" +
                  (t.median_exponent ? fmt("%.3f", *t.median_exponent) : std::string("none")) + " seed=7 time=" +
                  fmt("%.1fs", secs)};
}

Verdict simultaneous_action() {
  const auto t0 = Clock::now();
  auto base = make_polynomial_supported(PolynomialSpec{{{0, 1}, {0, 0, 1}}, 1}, RadiusProfile::power(Rational(1, 2), Rational(1, 2)));
  bool ok = true;
  std::string detail;
  for (const auto& c : {Rational(1, 4), Rational(1), Rational(4)}) {
    auto t = kgs_trial(SystemSpec::simult_expanding(2), {0, 0}, RadiusSequence::scaled(c, base), 10000,
                       SampleSpec{100, 128, 7, 0});
    const double mean = t.stats.back().ratio.mean;
    ok = ok && mean >= 0.8 && mean <= 1.2;
    detail += "C=" + to_string(c) + ":" + fmt("%.4f", mean) + (t.underpowered ? "(Psi<5) " : " ");
  }
  const double secs = seconds_since(t0);
  ok = ok && secs <= 120;
  return {ok, "mean N/Psi " + detail + "seed=7 time=" + fmt("%.1fs", secs)};
}

Verdict rotation_counterexample() {
  const auto t0 = Clock::now();
  const std::size_t K = 10000;
  auto rot = SystemSpec::rotation(QuadraticIrrational::golden());
  auto times = recurrence_times(rot, CirclePoint::exact(0), K);
  if (times.times.size() != K) return {false, "only " + std::to_string(times.times.size()) + " recurrence times"};
  auto leb = CircleMeasure::lebesgue();
  auto r = make_counterexample(leb, 0, times);
  bool radii = true;
  for (const auto& e : r.support(BigInt(K))) radii = radii && e.radius == SqrtRational::of(Rational(1) / Rational(e.ordinal));

  std::vector<CircleMeasure> ms{leb};
  auto sum = partial_measure_sum(ms, {0}, r, 1, BigInt(K));
  std::vector<Rational> inv;
  for (std::size_t k = 1; k <= K; ++k) inv.push_back(Rational(1) / Rational(k));
  const Rational hk = sum_exact(inv);
  const bool divergence = sum.exact && sum.value >= hk && hk > Rational(97, 10);

  auto p = tail_union_profile(rot, 0, r, K, leb, UnionRoute::Lebesgue);
  bool nonincreasing = true, strict = true;
  for (std::size_t l = 1; l < K; ++l) {
    nonincreasing = nonincreasing && p.u[l] <= p.u[l - 1];
    if (l >= 2) strict = strict && p.u[l] < p.u[l - 1];
  }
  const bool small = p.u[99] + p.error_bound < Rational(1, 10) && p.u[999] + p.error_bound < Rational(1, 50);
  const double secs = seconds_since(t0);
  const bool ok = radii && divergence && nonincreasing && strict && small && secs <= 60;
  return {ok, "sum=" + fmt("%.4f", to_double(sum.value)) + " >= H_K=" + fmt("%.4f", to_double(hk)) +
                  " U_1=U_2=1, strict for l>=2: " + (strict ? "yes" : "no") + " U_100=" + fmt("%.4g", to_double(p.u[99])) +
                  " U_1000=" + fmt("%.4g", to_double(p.u[999])) + " err<=" + fmt("%.1e", to_double(p.error_bound)) +
                  " time=" + fmt("%.1fs", secs)};
}

Verdict isometry_diameter() {
  std::mt19937_64 rng(7);
  const std::vector<SystemSpec> systems{SystemSpec::rotation(QuadraticIrrational::golden()),
                                        SystemSpec::rotation(Rational(144, 233))};
  std::size_t failures = 0, checked = 0;
  for (const auto& s : systems) {
    for (int i = 0; i < 1000; ++i) {
      const Rational center(static_cast<long long>(rng() % 1000003), 1000003);
      const Rational radius(static_cast<long long>(1 + rng() % 499999), 1000000);
      const BigInt n(static_cast<long long>(1 + rng() % 1000));
      const Arc ball(center, radius);
      const auto pre = preimage_ball(s, n, ball);
      const Rational diam = frac(pre.b() - pre.a());
      const Rational want = frac(ball.end() - ball.start());
      ++checked;
      if (diam != want || diam != 2 * radius) ++failures;
    }
  }
  return {failures == 0, std::to_string(checked) + " preimage balls, " + std::to_string(failures) + " failures"};
}

Verdict t_sequences() {
  auto leb = CircleMeasure::lebesgue();
  auto cantor = CircleMeasure::cantor();
  const Rational eps(1, 1000000000000LL);
  double worst = 0;
  bool exact = true, monotone = true;
  for (const auto& x : {Rational(0), Rational(1, 3)}) {
    Rational prev = 1;
    for (std::uint64_t n = 1; n <= 1000; ++n) {
      const Rational t = t_sequence(leb, x, n);
      const Rational err = abs(t - Rational(1) / Rational(2 * n));
      worst = std::max(worst, to_double(err));
      exact = exact && err <= eps;
      monotone = monotone && t <= prev;
      prev = t;
    }
  }
  Rational prev = 1;
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    const Rational t = t_sequence(cantor, Rational(1, 3), n);
    monotone = monotone && t <= prev;
    prev = t;
  }
  const Rational t2 = t_sequence(cantor, Rational(1, 3), 2);
  const bool cantor_ok = abs(t2 - Rational(1, 3)) <= Rational(1, 1000000000);
  return {exact && cantor_ok && monotone, "Lebesgue max|t_n-1/(2n)|=" + fmt("%.1e", worst) + " Cantor t_2(1/3)=" +
                                              to_string(t2) + " nonincreasing n<=1000: " + (monotone ? "yes" : "no")};
}

Verdict support_classification() {
  auto cantor = CircleMeasure::cantor(60);
  std::size_t points = 0, bad = 0;
  for (int level = 1; level <= 3; ++level) {
    const long long scale = level == 1 ? 3 : level == 2 ? 9 : 27;
    const Rational len(1, scale);
    for (long long k = 1; k < scale; k += 3) {
      const Rational a(k, scale), b(k + 1, scale);
      // Keep only gaps of this level: the left end must itself lie in the Cantor set.
      if (!support_contains(cantor, a) || !support_contains(cantor, b)) continue;
      auto left = classify_support_point(cantor, a);
      auto right = classify_support_point(cantor, b);
      points += 2;
      if (left.kind != SupportKind::IsolatedRight || left.gap_partner != b || left.gap_size != len) ++bad;
      if (right.kind != SupportKind::IsolatedLeft || right.gap_partner != a || right.gap_size != len) ++bad;
    }
  }
  return {points == 14 && bad == 0, std::to_string(points) + " gap endpoints, " + std::to_string(bad) + " misclassified"};
}

Verdict denjoy_integrity() {
  const auto t0 = Clock::now();
  auto map = DenjoyMap::build(DenjoyParams{golden_convergent(BigInt(1000000)), Rational(1, 6), Rational(1, 2), 64});
  const Rational defect = app::semiconjugacy_defect(*map, 1000);
  const bool conj = defect <= 10 * map->params().tol;
  const std::uint64_t n = 10000;
  const Rational est = rotation_number_estimate(SystemSpec::denjoy(map), n);
  const bool rho = abs(est - map->params().theta) <= Rational(2, n);

  const auto dir = std::filesystem::temp_directory_path() / "stplab-acceptance-denjoy";
  std::filesystem::remove_all(dir);
  auto outcome = app::run(app::resolve_config("denjoy-counterexample", app::Json{{"out", dir.string()}}));
  const auto& tail = outcome.summary["result"]["tail_union"];
  const double u100 = tail["U"]["100"]["value"].get<double>();
  const double err = std::stod(tail["error_bound"].get<std::string>());
  const bool tails = outcome.exit_code == 0 && tail["nonincreasing"].get<bool>() && u100 + err <= 0.15;
  return {conj && rho && tails, "defect=" + fmt("%.1e", to_double(defect)) + " |rho-theta|=" +
                                    fmt("%.2e", to_double(abs(est - map->params().theta))) + " (2/n=2e-4) K=" +
                                    std::to_string(tail["K"].get<std::size_t>()) + " U_100=" + fmt("%.4f", u100) +
                                    " nonincreasing: " + (tail["nonincreasing"].get<bool>() ? "yes" : "no") + " time=" +
                                    fmt("%.1fs", seconds_since(t0))};
}

Verdict oracle_suite() {
  auto reports = app::oracle_suite(app::resolve_config("oracle-suite", app::Json::object()));
  std::size_t failed = 0;
  std::string first;
  for (const auto& r : reports)
    if (!r.pass) {
      if (!failed) first = " first failure: " + to_string(r.component) + " " + r.instance + " " + r.witness;
      ++failed;
    }
  return {failed == 0, std::to_string(reports.size()) + " oracle checks, " + std::to_string(failed) + " failed" + first};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 Khintchine-Groshev consistency", kgs_consistency},
      {"2 Simultaneous action", simultaneous_action},
      {"3 Rotation counterexample", rotation_counterexample},
      {"4 Isometry diameter law", isometry_diameter},
      {"5 t-sequence", t_sequences},
      {"6 Support classification", support_classification},
      {"7 Denjoy integrity", denjoy_integrity},
      {"8 Oracle suite", oracle_suite},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s  [%s] %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
