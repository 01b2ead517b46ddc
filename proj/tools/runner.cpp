#include "runner.hpp"

#include "stp/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace stp::app {

namespace {

namespace fs = std::filesystem;

const Rational kProbeTol = pow2(-40);

std::string dec(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    Rational v = parse_rational(j.get<std::string>());
    if (den(v) != 1) throw ConfigError("expected an integer, got " + j.get<std::string>());
    return num(v);
  }
  throw ConfigError("expected an integer, got " + j.dump());
}

std::uint64_t count_from_json(const Json& j, const char* what) {
  BigInt v = bigint_from_json(j);
  if (v < 0 || v > BigInt(std::numeric_limits<std::int64_t>::max())) throw ConfigError(std::string(what) + " out of range");
  return v.convert_to<std::uint64_t>();
}

Json profile_to_json(const RadiusProfile& p) {
  if (p.kind() == RadiusProfile::Kind::Power)
    return {{"kind", "power"}, {"coefficient", to_string(p.coefficient())}, {"exponent", to_string(p.exponent())}};
  Json values = Json::array();
  for (const auto& v : p.values()) values.push_back(v.str());
  return {{"kind", "table"}, {"values", values}, {"first", to_string(p.first())}};
}

RadiusProfile profile_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") return RadiusProfile::power(rational_from_json(j.at("coefficient")), rational_from_json(j.at("exponent")));
  if (kind == "table") {
    std::vector<SqrtRational> values;
    for (const auto& v : j.at("values")) values.push_back(SqrtRational::parse(v.get<std::string>()));
    return RadiusProfile::table(std::move(values), j.contains("first") ? bigint_from_json(j.at("first")) : BigInt(1));
  }
  throw ConfigError("unknown profile kind " + kind);
}

SemigroupKind semigroup_from_string(const std::string& s) {
  if (s == "additive") return SemigroupKind::Additive;
  if (s == "multiplicative") return SemigroupKind::Multiplicative;
  if (s == "product") return SemigroupKind::Product;
  throw ConfigError("unknown semigroup " + s);
}

std::string support_kind_name(SupportKind k) {
  switch (k) {
    case SupportKind::BothSides: return "BothSides";
    case SupportKind::IsolatedLeft: return "IsolatedLeft";
    case SupportKind::IsolatedRight: return "IsolatedRight";
  }
  return "unknown";
}

Json quantiles_json(const Quantiles& q) {
  return {{"mean", q.mean}, {"stddev", q.stddev}, {"min", q.min},       {"q05", q.q05}, {"q25", q.q25},
          {"median", q.median}, {"q75", q.q75},   {"q95", q.q95}, {"max", q.max}};
}

Json sum_json(const MeasureSum& s) {
  Json j = measured(s.value, s.error_bound);
  j["terms"] = s.terms;
  j["divergence"] = to_string(s.divergence);
  return j;
}

Json fit_json(const ExponentFit& f) {
  Json j{{"degenerate", f.degenerate}, {"sample_size", f.sample_size}};
  if (f.degenerate) j["reason"] = f.reason;
  else j.update({{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}});
  return j;
}

std::vector<Rational> point_from_json(const Json& j) {
  std::vector<Rational> out;
  if (j.is_array())
    for (const auto& v : j) out.push_back(rational_from_json(v));
  else
    out.push_back(rational_from_json(j));
  return out;
}

void write_file(const fs::path& path, const std::string& text, RunOutcome& out) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error("write failed for " + path.string());
  out.files.push_back(path);
}

void write_summary(const fs::path& dir, const std::string& name, Json summary, RunOutcome& out) {
  out.summary = summary;
  write_file(dir / (name + ".json"), summary.dump(2) + "\n", out);
}

// Everything a run needs, validated before any file is touched.
struct Plan {
  std::string experiment;
  std::optional<SystemSpec> system;
  std::optional<CircleMeasure> measure;
  std::optional<RadiusSequence> radius;
  std::vector<Rational> point;
  std::uint64_t horizon = 0;
  SampleSpec samples;
  TrialOptions trial;
  std::vector<Rational> scales;
  ProbeOptions probe;
};

Plan make_plan(const Json& c) {
  Plan p;
  p.experiment = c.at("experiment").get<std::string>();
  if (c.contains("horizon")) {
    p.horizon = count_from_json(c.at("horizon"), "horizon");
    if (p.horizon == 0) throw ConfigError("horizon must be positive");
  }
  if (c.contains("samples")) {
    const Json& s = c.at("samples");
    p.samples.count = count_from_json(s.at("count"), "samples.count");
    p.samples.bits = count_from_json(s.at("bits"), "samples.bits");
    p.samples.master_seed = count_from_json(s.at("seed"), "samples.seed");
    p.samples.threads = static_cast<unsigned>(count_from_json(s.at("threads"), "samples.threads"));
    if (s.contains("batch_size")) p.trial.batch_size = count_from_json(s.at("batch_size"), "samples.batch_size");
    if (p.samples.count == 0) throw ConfigError("samples.count must be positive");
    if (p.samples.bits < 128 || p.samples.bits % 64 != 0) throw ConfigError("samples.bits must be a multiple of 64, at least 128");
  }
  if (c.contains("backend")) {
    const std::string b = c.at("backend").get<std::string>();
    if (b != "fixed" && b != "rational") throw ConfigError("backend must be fixed or rational");
    p.samples.backend = b == "fixed" ? Backend::Fixed : Backend::Rational;
  }
  if (c.contains("checkpoints"))
    for (const auto& v : c.at("checkpoints")) p.trial.checkpoints.push_back(count_from_json(v, "checkpoint"));
  if (c.contains("output_bits")) p.trial.output_bits = count_from_json(c.at("output_bits"), "output_bits");
  if (c.contains("repeat_threshold")) p.trial.repeat_threshold = count_from_json(c.at("repeat_threshold"), "repeat_threshold");
  if (c.contains("scales"))
    for (const auto& v : c.at("scales")) p.scales.push_back(rational_from_json(v));
  if (c.contains("tolerance")) {
    p.probe.tol = rational_from_json(c.at("tolerance"));
    if (p.probe.tol <= 0) throw ConfigError("tolerance must be positive");
  }
  if (c.contains("point")) p.point = point_from_json(c.at("point"));

  if (c.contains("system")) {
    Json sys = c.at("system");
    if (sys.at("kind") == "denjoy" && sys.value("theta", Json("auto")) == "auto") {
      // Enough golden-convergent digits for K one-sided best returns.
      const auto bits = static_cast<unsigned>(std::ceil(0.7 * (2.0 * static_cast<double>(p.horizon) + 40.0)));
      sys["theta"] = to_string(golden_convergent(BigInt(1) << std::max(bits, 21u)));
    }
    p.system = system_from_json(sys);
  }
  if (c.contains("measure")) p.measure = measure_from_json(c.at("measure"), p.system ? *p.system : SystemSpec::mult_expanding());
  if (c.contains("radius")) p.radius = radius_from_json(c.at("radius"));

  if (p.system && p.radius && p.radius->dim() != p.system->dim())
    throw ConfigError("radius sequence dimension does not match the system");
  if (p.system && !p.point.empty() && p.experiment != "classify-support" && p.experiment != "t-sequence" &&
      p.point.size() != p.system->dim())
    throw ConfigError("point needs one coordinate per system dimension");
  return p;
}

// Sampling experiments: kgs-verify, mstp-expanding, simult-expanding.

std::string trial_csv(const KgsTrialResult& t, std::size_t c) {
  std::string out = "h,sample_index,N,Psi,ratio\n";
  const double psi = to_double(t.stats[c].psi.value);
  for (std::size_t i = 0; i < t.counts.size(); ++i) {
    const auto n = t.counts[i][c];
    out += std::to_string(t.horizons[c]) + "," + std::to_string(i) + "," + std::to_string(n) + "," + dec(psi) + "," +
           dec(psi > 0 ? static_cast<double>(n) / psi : 0.0) + "\n";
  }
  return out;
}

std::string trial_checkpoint_csv(const KgsTrialResult& t) {
  std::string out = "h,sample_index,N,Psi,ratio\n";
  for (std::size_t c = 0; c < t.horizons.size(); ++c) {
    std::string block = trial_csv(t, c);
    out += block.substr(block.find('\n') + 1);
  }
  return out;
}

Json trial_json(const KgsTrialResult& t) {
  Json stats = Json::array();
  for (const auto& s : t.stats)
    stats.push_back({{"h", s.h},
                     {"psi", sum_json(s.psi)},
                     {"ratio", quantiles_json(s.ratio)},
                     {"ratio_standard_error", s.ratio.stddev / std::sqrt(static_cast<double>(t.counts.size()))},
                     {"normalized_error", quantiles_json(s.normalized_error)}});
  Json fits = Json::array();
  for (const auto& f : t.batch_fits) fits.push_back(fit_json(f));
  Json j{{"seeds", t.seeds},
         {"horizons", t.horizons},
         {"stats", stats},
         {"exponent", {{"batches", fits}, {"median_slope", t.median_exponent ? Json(*t.median_exponent) : Json()}}},
         {"underpowered", t.underpowered},
         {"repeat_fraction", t.repeat_fraction},
         {"mean_ratio", t.stats.back().ratio.mean},
         {"monte_carlo", true},
         {"note", "Monte Carlo consistency check over sampled alpha; not a certification"}};
  return j;
}

Json run_sampling(const Plan& p, const fs::path& dir, RunOutcome& out) {
  if (p.experiment == "simult-expanding") {
    Json runs = Json::array();
    for (std::size_t i = 0; i < p.scales.size(); ++i) {
      auto r = RadiusSequence::scaled(p.scales[i], *p.radius);
      auto t = kgs_trial(*p.system, p.point, r, p.horizon, p.samples, p.trial);
      const std::string stem = p.experiment + "-c" + std::to_string(i);
      write_file(dir / (stem + ".csv"), trial_csv(t, t.horizons.size() - 1), out);
      Json j = trial_json(t);
      j["scale"] = to_string(p.scales[i]);
      j["csv"] = stem + ".csv";
      runs.push_back(std::move(j));
    }
    return {{"runs", runs}};
  }
  auto t = kgs_trial(*p.system, p.point, *p.radius, p.horizon, p.samples, p.trial);
  write_file(dir / (p.experiment + ".csv"), trial_csv(t, t.horizons.size() - 1), out);
  write_file(dir / (p.experiment + "-checkpoints.csv"), trial_checkpoint_csv(t), out);
  return trial_json(t);
}

// Counterexamples: golden rotation or Denjoy map, tail unions of preimage balls.

Json run_counterexample(const Plan& p, const fs::path& dir, RunOutcome& out) {
  const SystemSpec& s = *p.system;
  const CircleMeasure& m = *p.measure;
  const Rational x = p.point.front();
  const std::size_t K = p.horizon;
  auto times = recurrence_times(s, CirclePoint::exact(x), K);
  if (times.times.size() < K)
    throw BudgetExceeded("only " + std::to_string(times.times.size()) + " recurrence times before status " +
                         to_string(times.status));
  auto r = make_counterexample(m, x, times, p.probe);

  std::vector<CircleMeasure> ms{m};
  const MeasureSum sum = partial_measure_sum(ms, {x}, r, 1, BigInt(K));
  std::vector<Rational> inv;
  for (std::size_t k = 1; k <= K; ++k) inv.push_back(Rational(1) / Rational(k));
  const Rational harmonic = sum_exact(std::move(inv));

  const UnionRoute route = m.kind() == CircleMeasure::Kind::Lebesgue ? UnionRoute::Lebesgue : UnionRoute::Cdf;
  const auto prof = tail_union_profile(s, x, r, K, m, route);
  bool nonincreasing = true;
  std::size_t strict_from = K;
  for (std::size_t l = K - 1; l >= 1; --l) {
    if (prof.u[l] > prof.u[l - 1]) nonincreasing = false;
    if (strict_from == l + 1 && prof.u[l] < prof.u[l - 1]) strict_from = l;
  }

  std::string csv = "l,U,error_bound\n";
  const std::string err = dec(to_double(prof.error_bound));
  for (std::size_t l = 1; l <= K; ++l) csv += std::to_string(l) + "," + dec(to_double(prof.u[l - 1])) + "," + err + "\n";
  write_file(dir / (p.experiment + ".csv"), csv, out);

  Json tail{{"K", K}, {"route", to_string(route)}, {"error_bound", dec(to_double(prof.error_bound))},
            {"nonincreasing", nonincreasing}, {"strictly_decreasing_from", strict_from},
            {"ball_sum", sum_json(prof.ball_sum)}};
  for (std::size_t l : {std::size_t{1}, std::size_t{2}, std::size_t{10}, std::size_t{100}, std::size_t{1000}, K})
    if (l <= K) tail["U"][std::to_string(l)] = measured(prof.u[l - 1], prof.error_bound);

  Json first = Json::array();
  for (std::size_t k = 0; k < std::min<std::size_t>(20, times.times.size()); ++k) first.push_back(to_string(times.times[k]));
  Json j{{"point", to_string(x)},
         {"measure", m.name()},
         {"recurrence", {{"count", times.times.size()}, {"status", to_string(times.status)}, {"method", times.method},
                         {"first_times", first}}},
         {"partial_sum", sum_json(sum)},
         {"harmonic_number", measured(harmonic, 0)},
         {"partial_sum_at_least_harmonic", sum.value - sum.error_bound >= harmonic},
         {"tail_union", tail}};

  if (const DenjoyMap* f = s.denjoy_map()) {
    const Rational defect = semiconjugacy_defect(*f, 1000);
    const std::uint64_t n = 10000;
    const Rational est = rotation_number_estimate(s, n);
    const Rational theta = f->params().theta;
    j["integrity"] = {{"semiconjugacy_defect", measured(defect, 0)},
                      {"tol", to_string(f->params().tol)},
                      {"tail_bound", dec(to_double(f->tail_bound()))},
                      {"rotation_number", {{"n", n}, {"estimate", to_double(est)}, {"theta", to_double(theta)},
                                           {"within_2_over_n", abs(est - theta) <= Rational(2, n)}}}};
  }
  return j;
}

Json run_classify(const Plan& p, const fs::path& dir, RunOutcome& out) {
  std::string csv = "point,kind,y,s_x\n";
  Json results = Json::array();
  for (const auto& x : p.point) {
    auto c = classify_support_point(*p.measure, x, p.probe);
    Json j{{"point", to_string(x)}, {"kind", support_kind_name(c.kind)}, {"resolution", to_string(c.resolution)},
           {"partner_exact", c.partner_exact}};
    j["y"] = c.gap_partner ? Json(to_string(*c.gap_partner)) : Json();
    j["s_x"] = c.gap_size ? Json(to_string(*c.gap_size)) : Json();
    csv += to_string(x) + "," + support_kind_name(c.kind) + "," + (c.gap_partner ? to_string(*c.gap_partner) : "") + "," +
           (c.gap_size ? to_string(*c.gap_size) : "") + "\n";
    results.push_back(std::move(j));
  }
  write_file(dir / (p.experiment + ".csv"), csv, out);
  if (results.size() == 1) return results.front();
  return {{"points", results}};
}

Json run_t_sequence(const Plan& p, const fs::path& dir, RunOutcome& out) {
  const Rational x = p.point.front();
  std::string csv = "n,t_n,t_n_decimal\n";
  Rational prev = 1;
  bool monotone = true;
  Json head = Json::array();
  for (std::uint64_t n = 1; n <= p.horizon; ++n) {
    Rational t = t_sequence(*p.measure, x, n, p.probe);
    if (t > prev) monotone = false;
    prev = t;
    csv += std::to_string(n) + "," + to_string(t) + "," + dec(to_double(t)) + "\n";
    if (n <= 10) head.push_back(to_string(t));
  }
  write_file(dir / (p.experiment + ".csv"), csv, out);
  return {{"point", to_string(x)},
          {"measure", p.measure->name()},
          {"n_max", p.horizon},
          {"first", head},
          {"last", dec(to_double(prev))},
          {"error_bound", to_string(p.probe.tol)},
          {"nonincreasing", monotone}};
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"kgs-verify",           "mstp-expanding",    "simult-expanding",
                                              "rotation-counterexample", "denjoy-counterexample", "classify-support",
                                              "t-sequence",           "oracle-suite"};
  return names;
}

Rational rational_from_json(const Json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number()) return parse_rational(j.dump());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("expected a rational, got " + j.dump());
}

Json measured(const Rational& value, const Rational& error_bound) {
  Json j{{"value", to_double(value)}, {"exact", error_bound == 0}};
  if (error_bound != 0) j["error_bound"] = dec(to_double(error_bound));
  std::string s = to_string(value);
  if (s.size() <= 80) j["rational"] = s;
  return j;
}

Json radius_to_json(const RadiusSequence& r) {
  return std::visit(
      [&](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RadiusSequence::Monotone>) {
          return {{"kind", "monotone"}, {"profile", profile_to_json(v.profile)}, {"semigroup", to_string(v.semigroup)}};
        } else if constexpr (std::is_same_v<T, RadiusSequence::Polynomial>) {
          Json coeffs = Json::array();
          for (const auto& poly : v.spec.coefficients) {
            Json row = Json::array();
            for (const auto& c : poly) row.push_back(to_string(c));
            coeffs.push_back(row);
          }
          return {{"kind", "polynomial_supported"}, {"coefficients", coeffs}, {"start", to_string(v.spec.start)},
                  {"profile", profile_to_json(v.profile)}};
        } else if constexpr (std::is_same_v<T, RadiusSequence::Subset>) {
          Json times = Json::array(), values = Json::array();
          for (const auto& t : v.times) times.push_back(to_string(t));
          for (const auto& x : v.values) values.push_back(x.str());
          return {{"kind", "shrinking_on_subset"}, {"times", times}, {"values", values},
                  {"harmonic_lower_bound", v.harmonic_lower_bound}};
        } else if constexpr (std::is_same_v<T, RadiusSequence::Scaled>) {
          return {{"kind", "scaled"}, {"factor", to_string(v.factor)}, {"inner", radius_to_json(*v.inner)}};
        } else {
          throw ConfigError("custom radius sequence " + v.name + " has no JSON form");
        }
      },
      r.variant());
}

RadiusSequence radius_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "monotone")
      return RadiusSequence::monotone(profile_from_json(j.at("profile")),
                                      semigroup_from_string(j.value("semigroup", std::string("multiplicative"))));
    if (kind == "polynomial_supported") {
      PolynomialSpec spec;
      for (const auto& row : j.at("coefficients")) {
        std::vector<BigInt> poly;
        for (const auto& c : row) poly.push_back(bigint_from_json(c));
        spec.coefficients.push_back(std::move(poly));
      }
      spec.start = j.contains("start") ? bigint_from_json(j.at("start")) : BigInt(1);
      return make_polynomial_supported(spec, profile_from_json(j.at("profile")));
    }
    if (kind == "shrinking_on_subset") {
      std::vector<BigInt> times;
      std::vector<SqrtRational> values;
      for (const auto& t : j.at("times")) times.push_back(bigint_from_json(t));
      for (const auto& v : j.at("values")) values.push_back(SqrtRational::parse(v.get<std::string>()));
      return RadiusSequence::shrinking_on_subset(std::move(times), std::move(values), j.value("harmonic_lower_bound", false));
    }
    if (kind == "scaled") return RadiusSequence::scaled(rational_from_json(j.at("factor")), radius_from_json(j.at("inner")));
    throw ConfigError("unknown radius kind " + kind);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("radius: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("radius: ") + e.what());
  }
}

SystemSpec system_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "mult_expanding") return SystemSpec::mult_expanding();
    if (kind == "simult_expanding") return SystemSpec::simult_expanding(count_from_json(j.at("n"), "system.n"));
    if (kind == "rotation") {
      const Json& t = j.at("theta");
      if (t == "golden") return SystemSpec::rotation(QuadraticIrrational::golden());
      if (t.is_array()) {
        if (t.size() != 3) throw ConfigError("quadratic angle needs [p, d, q] for (p + sqrt d) / q");
        return SystemSpec::rotation(QuadraticIrrational(bigint_from_json(t[0]), bigint_from_json(t[1]), bigint_from_json(t[2])));
      }
      return SystemSpec::rotation(rational_from_json(t));
    }
    if (kind == "denjoy") {
      DenjoyParams params;
      const Json& t = j.at("theta");
      params.theta = t == "golden_convergent" ? golden_convergent(BigInt(1000000)) : rational_from_json(t);
      if (j.contains("c")) params.c = rational_from_json(j.at("c"));
      if (j.contains("lambda")) params.lambda = rational_from_json(j.at("lambda"));
      if (j.contains("n_max")) params.n_max = static_cast<unsigned>(count_from_json(j.at("n_max"), "system.n_max"));
      if (j.contains("tol")) params.tol = rational_from_json(j.at("tol"));
      return SystemSpec::denjoy(DenjoyMap::build(params));
    }
    throw ConfigError("unknown system kind " + kind);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("system: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }
}

Json system_to_json(const SystemSpec& s) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MultExpanding>) {
          return {{"kind", "mult_expanding"}};
        } else if constexpr (std::is_same_v<T, SimultExpanding>) {
          return {{"kind", "simult_expanding"}, {"n", v.n}};
        } else if constexpr (std::is_same_v<T, Rotation>) {
          if (v.irrational)
            return {{"kind", "rotation"},
                    {"theta", {to_string(v.irrational->p()), to_string(v.irrational->d()), to_string(v.irrational->q())}}};
          return {{"kind", "rotation"}, {"theta", to_string(v.theta)}};
        } else {
          const auto& prm = v.map->params();
          return {{"kind", "denjoy"}, {"theta", to_string(prm.theta)}, {"c", to_string(prm.c)},
                  {"lambda", to_string(prm.lambda)}, {"n_max", prm.n_max}, {"tol", to_string(prm.tol)}};
        }
      },
      s.variant());
}

CircleMeasure measure_from_json(const Json& j, const SystemSpec& s) {
  const std::string name = j.is_string() ? j.get<std::string>() : j.at("kind").get<std::string>();
  if (name == "lebesgue") return CircleMeasure::lebesgue();
  if (name == "cantor") {
    unsigned depth = j.is_object() && j.contains("depth") ? static_cast<unsigned>(count_from_json(j.at("depth"), "depth")) : 60;
    return CircleMeasure::cantor(depth);
  }
  if (name == "denjoy") {
    const auto* d = std::get_if<Denjoy>(&s.variant());
    if (!d) throw ConfigError("the denjoy measure needs a denjoy system");
    return CircleMeasure::denjoy(d->map);
  }
  throw ConfigError("unknown measure " + name);
}

Rational semiconjugacy_defect(const DenjoyMap& map, unsigned grid) {
  Rational worst = 0;
  const Rational theta = map.params().theta;
  for (unsigned i = 0; i < grid; ++i) {
    const Rational x(i, grid);
    worst = std::max(worst, dist(map.collapse(map.apply(x)), frac(map.collapse(x) + theta)));
  }
  return worst;
}

Json default_config(const std::string& experiment) {
  const Json samples{{"count", 200}, {"bits", 128}, {"seed", 7}, {"threads", 0}, {"batch_size", 20}};
  const Json half_harmonic{{"kind", "monotone"},
                           {"profile", {{"kind", "power"}, {"coefficient", "1/2"}, {"exponent", "1"}}},
                           {"semigroup", "multiplicative"}};
  const std::string tol = to_string(kProbeTol);
  Json c{{"experiment", experiment}, {"out", "stplab-out"}};
  if (experiment == "kgs-verify" || experiment == "mstp-expanding") {
    const bool kgs = experiment == "kgs-verify";
    Json s = samples;
    if (!kgs) s["count"] = 100;
    c.update({{"system", {{"kind", "mult_expanding"}}},
              {"radius", half_harmonic},
              {"point", kgs ? Json::array({"0"}) : Json::array({"1/4"})},
              {"horizon", kgs ? 100000 : 10000},
              {"checkpoints", kgs ? Json::array({1000, 10000, 100000}) : Json::array({100, 1000, 10000})},
              {"samples", s},
              {"backend", "fixed"},
              {"output_bits", 64},
              {"repeat_threshold", 10}});
  } else if (experiment == "simult-expanding") {
    Json s = samples;
    s["count"] = 100;
    c.update({{"system", {{"kind", "simult_expanding"}, {"n", 2}}},
              {"radius",
               {{"kind", "polynomial_supported"},
                {"coefficients", {{"0", "1"}, {"0", "0", "1"}}},
                {"start", "1"},
                {"profile", {{"kind", "power"}, {"coefficient", "1/2"}, {"exponent", "1/2"}}}}},
              {"point", {"0", "0"}},
              {"horizon", 10000},
              {"checkpoints", {100, 1000, 10000}},
              {"samples", s},
              {"scales", {"1/4", "1", "4"}},
              {"backend", "fixed"},
              {"output_bits", 64},
              {"repeat_threshold", 10}});
  } else if (experiment == "rotation-counterexample") {
    c.update({{"system", {{"kind", "rotation"}, {"theta", "golden"}}},
              {"measure", "lebesgue"},
              {"point", {"0"}},
              {"horizon", 10000},
              {"tolerance", tol}});
  } else if (experiment == "denjoy-counterexample") {
    c.update({{"system",
               {{"kind", "denjoy"}, {"theta", "auto"}, {"c", "1/6"}, {"lambda", "1/2"}, {"n_max", 64},
                {"tol", to_string(pow2(-64))}}},
              {"measure", "denjoy"},
              {"point", {"0"}},
              {"horizon", 10000},
              {"tolerance", tol}});
  } else if (experiment == "classify-support") {
    c.update({{"system", {{"kind", "denjoy"}, {"theta", "golden_convergent"}}},
              {"measure", "cantor"},
              {"point", {"1/3"}},
              {"tolerance", tol}});
  } else if (experiment == "t-sequence") {
    c.update({{"system", {{"kind", "denjoy"}, {"theta", "golden_convergent"}}},
              {"measure", "lebesgue"},
              {"point", {"0"}},
              {"horizon", 1000},
              {"tolerance", tol}});
  } else if (experiment == "oracle-suite") {
    Json s = samples;
    s["count"] = 5;
    c.update({{"horizon", 1000}, {"samples", s}, {"union_points", 1000000}});
  } else {
    throw ConfigError("unknown experiment " + experiment);
  }
  return c;
}

Json resolve_config(const std::string& experiment, const Json& overrides) {
  Json c = default_config(experiment);
  if (!overrides.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : overrides.items()) {
    if (key == "experiment") {
      if (value != experiment) throw ConfigError("config names experiment " + value.dump() + ", run asked for " + experiment);
      continue;
    }
    if (!c.contains(key)) throw ConfigError("unknown key \"" + key + "\" for " + experiment);
    if (key == "samples") {
      if (!value.is_object()) throw ConfigError("samples must be an object");
      for (const auto& [k, v] : value.items()) {
        if (!c["samples"].contains(k)) throw ConfigError("unknown key \"samples." + k + "\"");
        c["samples"][k] = v;
      }
    } else {
      c[key] = value;
    }
  }
  try {
    make_plan(c);
  } catch (const Json::exception& e) {
    throw ConfigError(e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

std::vector<OracleReport> oracle_suite(const Json& config) {
  const Plan p = make_plan(config);
  const std::uint64_t h = p.horizon;
  std::vector<OracleReport> out;

  const auto half_harmonic = RadiusSequence::monotone(RadiusProfile::power(Rational(1, 2), 1));
  const auto constant = RadiusSequence::monotone(RadiusProfile::power(Rational(1, 20), 0));
  const auto curve = RadiusSequence::scaled(
      4, make_polynomial_supported(PolynomialSpec{{{0, 1}, {0, 0, 1}}, 1}, RadiusProfile::power(Rational(1, 2), Rational(1, 2))));
  const auto mult = SystemSpec::mult_expanding();
  const auto simult = SystemSpec::simult_expanding(2);
  for (std::uint64_t i = 0; i < p.samples.count; ++i) {
    out.push_back(oracle_hit_count(mult, sample_point(p.samples, i, 1), {0}, half_harmonic, h));
    out.push_back(oracle_hit_count(mult, sample_point(p.samples, i, 1), {Rational(1, 4)}, constant, h));
    out.push_back(oracle_hit_count(simult, sample_point(p.samples, i, 2), {0, 0}, curve, h));
  }
  const auto rot = SystemSpec::rotation(Rational(3, 17));
  for (const auto& a : {Rational(0), Rational(1, 5), Rational(2, 7)})
    out.push_back(oracle_hit_count(rot, TorusPoint{CirclePoint::exact(a)}, {0}, half_harmonic, h));
  out.push_back(oracle_hit_count(mult, TorusPoint{CirclePoint::exact(Rational(1, 3))}, {0},
                                 RadiusSequence::monotone(RadiusProfile::power(Rational(1, 10), 0)), h));

  std::mt19937_64 rng(p.samples.master_seed);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Arc> arcs;
    for (int k = 0; k < 12; ++k)
      arcs.emplace_back(Rational(static_cast<long long>(rng() % 1000), 1000), Rational(static_cast<long long>(1 + rng() % 60), 1000));
    out.push_back(oracle_union_measure(arcs, count_from_json(config.at("union_points"), "union_points"), rng()));
  }

  const std::vector<CircleMeasure> leb{CircleMeasure::lebesgue()};
  const std::vector<CircleMeasure> leb2(2, CircleMeasure::lebesgue());
  const std::vector<CircleMeasure> cantor{CircleMeasure::cantor()};
  out.push_back(oracle_counting_profile(leb, {0}, half_harmonic, h));
  out.push_back(oracle_counting_profile(leb, {Rational(1, 3)}, constant, h));
  out.push_back(oracle_counting_profile(leb2, {0, Rational(1, 2)}, curve, h));
  out.push_back(oracle_counting_profile(cantor, {Rational(1, 3)}, half_harmonic, 200));

  const ProbeOptions probe{Rational(1, 1000000), 256};
  for (std::uint64_t n : {1, 2, 3, 10, 100})
    out.push_back(oracle_t_sequence(CircleMeasure::lebesgue(), Rational(1, 5), n, Rational(1, 1000000), probe));
  out.push_back(oracle_t_sequence(CircleMeasure::cantor(), Rational(1, 3), 2, Rational(1, 10000), probe));
  return out;
}

RunOutcome run(const Json& config) {
  const std::string name = config.at("experiment").get<std::string>();
  Json c = resolve_config(name, config);
  RunOutcome out;
  Plan p;
  try {
    p = make_plan(c);
  } catch (const ToleranceExceeded&) {
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  const fs::path dir = c.at("out").get<std::string>();
  fs::create_directories(dir);
  Json summary{{"config", c}, {"version", kVersion}, {"experiment", name}};
  try {
    if (name == "kgs-verify" || name == "mstp-expanding" || name == "simult-expanding") {
      summary["result"] = run_sampling(p, dir, out);
    } else if (name == "rotation-counterexample" || name == "denjoy-counterexample") {
      summary["result"] = run_counterexample(p, dir, out);
    } else if (name == "classify-support") {
      summary["result"] = run_classify(p, dir, out);
    } else if (name == "t-sequence") {
      summary["result"] = run_t_sequence(p, dir, out);
    } else {
      auto reports = oracle_suite(c);
      std::string csv = "component,instance,pass,witness\n";
      Json list = Json::array();
      bool all = true;
      for (const auto& r : reports) {
        all = all && r.pass;
        csv += to_string(r.component) + ",\"" + r.instance + "\"," + (r.pass ? "true" : "false") + ",\"" + r.witness + "\"\n";
        list.push_back({{"component", to_string(r.component)}, {"instance", r.instance}, {"pass", r.pass},
                        {"witness", r.witness}});
      }
      write_file(dir / (name + ".csv"), csv, out);
      summary["result"] = {{"all_pass", all}, {"checks", list}};
      if (!all) out.exit_code = 1;
    }
  } catch (const PrecisionExhausted& e) {
    summary.update({{"partial", true}, {"error", e.what()}});
    out.exit_code = 3;
  } catch (const BudgetExceeded& e) {
    summary.update({{"partial", true}, {"error", e.what()}});
    out.exit_code = 3;
  } catch (const ToleranceExceeded& e) {
    summary.update({{"partial", true}, {"error", e.what()}});
    out.exit_code = 3;
  }
  if (!summary.contains("partial")) summary["partial"] = false;
  write_summary(dir, name, std::move(summary), out);
  return out;
}

}  // namespace stp::app
