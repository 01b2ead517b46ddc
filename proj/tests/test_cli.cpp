#include "doctest.h"

#include "runner.hpp"
#include "stp/errors.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace stp;
using stp::app::Json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("stplab-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

void round_trip(const RadiusSequence& r) {
  Json j = app::radius_to_json(r);
  auto back = app::radius_from_json(Json::parse(j.dump()));
  CHECK(app::radius_to_json(back) == j);
  auto a = r.support(BigInt(40));
  auto b = back.support(BigInt(40));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].index == b[i].index);
    CHECK(a[i].radius == b[i].radius);
  }
}

int run_cli(const std::string& args) {
  int status = std::system((std::string(STPLAB_EXE) + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("radius sequences round-trip through JSON") {
  round_trip(RadiusSequence::monotone(RadiusProfile::power(Rational(1, 2), 1)));
  round_trip(RadiusSequence::monotone(RadiusProfile::power(Rational(1, 3), Rational(1, 2)), SemigroupKind::Additive));
  round_trip(RadiusSequence::monotone(
      RadiusProfile::table({SqrtRational::of(Rational(1, 2)), SqrtRational::sqrt(Rational(1, 8)), SqrtRational::of(Rational(1, 9))})));
  auto curve = make_polynomial_supported(PolynomialSpec{{{0, 1}, {0, 0, 1}}, 1}, RadiusProfile::power(Rational(1, 2), Rational(1, 2)));
  round_trip(curve);
  round_trip(RadiusSequence::scaled(4, curve));
  round_trip(RadiusSequence::shrinking_on_subset({1, 2, 3, 5, 8}, {SqrtRational::of(1), SqrtRational::of(Rational(1, 2)),
                                                                   SqrtRational::of(Rational(1, 3)), SqrtRational::of(Rational(1, 4)),
                                                                   SqrtRational::of(Rational(1, 5))},
                                                 true));
  CHECK_THROWS_AS(app::radius_from_json(Json{{"kind", "spiral"}}), ConfigError);
  CHECK_THROWS_AS(app::radius_from_json(Json::parse(R"({"kind":"polynomial_supported","coefficients":[["5"]],"profile":{"kind":"power","coefficient":"1","exponent":"1"}})")),
                  ConfigError);
}

TEST_CASE("config validation") {
  for (const auto& name : app::experiment_names()) CHECK_NOTHROW(app::resolve_config(name, Json::object()));
  CHECK_THROWS_AS(app::resolve_config("warp-drive", Json::object()), ConfigError);
  CHECK_THROWS_AS(app::resolve_config("kgs-verify", Json{{"horizn", 10}}), ConfigError);
  CHECK_THROWS_AS(app::resolve_config("kgs-verify", Json{{"samples", {{"cont", 10}}}}), ConfigError);
  CHECK_THROWS_AS(app::resolve_config("kgs-verify", Json{{"horizon", "ten"}}), ConfigError);
  CHECK_THROWS_AS(app::resolve_config("kgs-verify", Json{{"samples", {{"bits", 100}}}}), ConfigError);
  CHECK_THROWS_AS(app::resolve_config("kgs-verify", Json{{"point", {"0", "0"}}}), ConfigError);
  CHECK_THROWS_AS(app::resolve_config("t-sequence", Json{{"measure", "denjoy"}, {"system", {{"kind", "mult_expanding"}}}}),
                  ConfigError);
  auto c = app::resolve_config("kgs-verify", Json{{"horizon", 500}, {"samples", {{"count", 3}}}});
  CHECK(c["horizon"] == 500);
  CHECK(c["samples"]["count"] == 3);
  CHECK(c["samples"]["seed"] == 7);
}

TEST_CASE("classify-support through the runner") {
  auto dir = scratch("classify");
  auto cfg = app::resolve_config("classify-support", Json{{"out", dir.string()}});
  auto outcome = app::run(cfg);
  CHECK(outcome.exit_code == 0);
  const Json& r = outcome.summary["result"];
  CHECK(r["kind"] == "IsolatedRight");
  CHECK(r["y"] == "2/3");
  CHECK(r["s_x"] == "1/3");
  CHECK(outcome.summary["config"] == cfg);
  CHECK(fs::exists(dir / "classify-support.json"));
}

TEST_CASE("artifacts are byte-identical across runs and thread counts") {
  auto a = scratch("det-a");
  auto b = scratch("det-b");
  Json over{{"horizon", 5000}, {"checkpoints", {50, 500}}, {"samples", {{"count", 12}, {"threads", 1}}}};
  over["out"] = a.string();
  auto ra = app::run(app::resolve_config("kgs-verify", over));
  over["out"] = b.string();
  over["samples"]["threads"] = 4;
  auto rb = app::run(app::resolve_config("kgs-verify", over));
  CHECK(slurp(a / "kgs-verify.csv") == slurp(b / "kgs-verify.csv"));
  CHECK(slurp(a / "kgs-verify-checkpoints.csv") == slurp(b / "kgs-verify-checkpoints.csv"));
  Json ja = Json::parse(slurp(a / "kgs-verify.json"));
  Json jb = Json::parse(slurp(b / "kgs-verify.json"));
  CHECK(ja["result"] == jb["result"]);
  CHECK(ja["version"] == app::kVersion);

  const std::string csv = slurp(a / "kgs-verify.csv");
  CHECK(csv.substr(0, csv.find('\n')) == "h,sample_index,N,Psi,ratio");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(ja.contains("config"));
  CHECK(ja["result"]["seeds"].size() == 12);

  auto c = scratch("det-c");
  over["out"] = c.string();
  over["samples"]["threads"] = 1;
  app::run(app::resolve_config("kgs-verify", over));
  std::string again = slurp(c / "kgs-verify.json");
  again.replace(again.find(c.string()), c.string().size(), a.string());
  CHECK(slurp(a / "kgs-verify.json") == again);
}

TEST_CASE("precision exhaustion is flagged") {
  auto dir = scratch("budget");
  auto cfg = app::resolve_config("kgs-verify", Json{{"out", dir.string()}, {"horizon", 100}, {"output_bits", 127},
                                                    {"samples", {{"count", 2}}}});
  auto outcome = app::run(cfg);
  CHECK(outcome.exit_code == 3);
  CHECK(outcome.summary["partial"] == true);
  CHECK(outcome.summary.contains("error"));
}

TEST_CASE("small counterexample and oracle runs") {
  auto dir = scratch("rot");
  auto outcome = app::run(app::resolve_config("rotation-counterexample", Json{{"out", dir.string()}, {"horizon", 200}}));
  CHECK(outcome.exit_code == 0);
  const Json& tail = outcome.summary["result"]["tail_union"];
  CHECK(tail["nonincreasing"] == true);
  CHECK(tail["strictly_decreasing_from"] == 2);
  CHECK(outcome.summary["result"]["partial_sum_at_least_harmonic"] == true);
  CHECK(slurp(dir / "rotation-counterexample.csv").rfind("l,U,error_bound\n", 0) == 0);

  auto dj = scratch("denjoy");
  auto d = app::run(app::resolve_config("denjoy-counterexample", Json{{"out", dj.string()}, {"horizon", 100}}));
  CHECK(d.exit_code == 0);
  CHECK(d.summary["result"]["integrity"]["semiconjugacy_defect"]["value"] == 0.0);
  CHECK(d.summary["result"]["integrity"]["rotation_number"]["within_2_over_n"] == true);

  auto reports = app::oracle_suite(app::resolve_config("oracle-suite", Json{{"horizon", 300}, {"samples", {{"count", 2}}},
                                                                           {"union_points", 100000}}));
  for (const auto& r : reports) CHECK_MESSAGE(r.pass, r.instance << " " << r.witness);
}

TEST_CASE("command-line exit codes") {
  auto dir = scratch("cli");
  fs::create_directories(dir);
  {
    std::ofstream bad(dir / "bad.json");
    bad << "{\"horizon\": ";
  }
  auto out = dir / "out";
  CHECK(run_cli("run kgs-verify --config " + (dir / "bad.json").string() + " --out " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK(run_cli("run no-such-experiment") == 2);
  CHECK(run_cli("run t-sequence --horizon 20 --out " + out.string()) == 0);
  CHECK(fs::exists(out / "t-sequence.csv"));
  CHECK(run_cli("run kgs-verify --horizon 100 --samples 2 --bits 100 --out " + out.string()) == 2);
}
