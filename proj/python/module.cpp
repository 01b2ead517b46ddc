#include "runner.hpp"

#include "stp/errors.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using stp::app::Json;

namespace {

// Python dicts cross the boundary as JSON text.
Json to_json(const py::object& obj) {
  return Json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

stp::Rational rat(const std::string& s) { return stp::parse_rational(s); }

std::vector<stp::Rational> rats(const std::vector<std::string>& v) {
  std::vector<stp::Rational> out;
  for (const auto& s : v) out.push_back(rat(s));
  return out;
}

stp::SystemSpec system(const py::object& spec) { return stp::app::system_from_json(to_json(spec)); }

stp::CircleMeasure measure(const std::string& name, const stp::SystemSpec& s) {
  return stp::app::measure_from_json(Json(name), s);
}

py::dict sum_dict(const stp::MeasureSum& s) {
  py::dict d;
  d["value"] = stp::to_string(s.value);
  d["exact"] = s.exact;
  d["error_bound"] = stp::to_string(s.error_bound);
  d["terms"] = s.terms;
  d["divergence"] = stp::to_string(s.divergence);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shrinking target experiments on the circle and torus. Rationals are passed as \"p/q\" strings.";

  py::register_exception<stp::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<stp::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<stp::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<stp::PrecisionExhausted>(m, "PrecisionExhausted", PyExc_ArithmeticError);

  m.attr("__version__") = stp::app::kVersion;

  m.def("experiments", &stp::app::experiment_names, "Names accepted by run().");
  m.def("default_config", [](const std::string& name) { return to_py(stp::app::default_config(name)); }, py::arg("experiment"));
  m.def(
      "run",
      [](const std::string& name, const py::object& overrides) {
        Json over = overrides.is_none() ? Json::object() : to_json(overrides);
        auto outcome = stp::app::run(stp::app::resolve_config(name, over));
        py::dict d;
        d["exit_code"] = outcome.exit_code;
        d["summary"] = to_py(outcome.summary);
        std::vector<std::string> files;
        for (const auto& f : outcome.files) files.push_back(f.string());
        d["files"] = files;
        return d;
      },
      py::arg("experiment"), py::arg("overrides") = py::none(), "Run an experiment; writes CSV and JSON into overrides['out'].");

  m.def("dist", [](const std::string& x, const std::string& y) { return stp::to_string(stp::dist(rat(x), rat(y))); },
        "Circle distance of two points.");
  m.def(
      "union_measure",
      [](const std::vector<std::pair<std::string, std::string>>& balls) {
        std::vector<stp::Arc> arcs;
        for (const auto& [c, r] : balls) arcs.emplace_back(rat(c), rat(r));
        return stp::to_string(stp::union_measure(arcs));
      },
      py::arg("balls"), "Lebesgue measure of a union of balls given as (center, radius).");

  m.def(
      "t_sequence",
      [](const std::string& meas, const std::string& x, std::uint64_t n, const std::string& tol) {
        stp::ProbeOptions opts;
        opts.tol = rat(tol);
        return stp::to_string(stp::t_sequence(measure(meas, stp::SystemSpec::mult_expanding()), rat(x), n, opts));
      },
      py::arg("measure"), py::arg("x"), py::arg("n"), py::arg("tol") = "1/1099511627776");
  m.def(
      "classify_support",
      [](const std::string& meas, const std::string& x) {
        auto c = stp::classify_support_point(measure(meas, stp::SystemSpec::mult_expanding()), rat(x));
        py::dict d;
        d["kind"] = stp::to_string(c.kind);
        d["y"] = c.gap_partner ? py::object(py::str(stp::to_string(*c.gap_partner))) : py::none();
        d["s_x"] = c.gap_size ? py::object(py::str(stp::to_string(*c.gap_size))) : py::none();
        d["partner_exact"] = c.partner_exact;
        return d;
      },
      py::arg("measure"), py::arg("x"));

  m.def(
      "recurrence_times",
      [](const py::object& spec, const std::string& x, std::size_t count) {
        auto t = stp::recurrence_times(system(spec), stp::CirclePoint::exact(rat(x)), count);
        std::vector<std::string> out;
        for (const auto& n : t.times) out.push_back(stp::to_string(n));
        return out;
      },
      py::arg("system"), py::arg("x"), py::arg("count"));

  m.def(
      "hit_count",
      [](const py::object& spec, const std::vector<std::string>& alpha, const std::vector<std::string>& x,
         const py::object& radius, std::uint64_t h) {
        std::vector<stp::CirclePoint> a;
        for (const auto& s : alpha) a.push_back(stp::CirclePoint::exact(rat(s)));
        auto r = stp::hit_count(system(spec), stp::TorusPoint(a), rats(x), stp::app::radius_from_json(to_json(radius)), h,
                                {true});
        py::dict d;
        d["count"] = r.count;
        d["psi"] = sum_dict(r.psi);
        std::vector<std::string> hits;
        for (const auto& q : r.hits) hits.push_back(stp::to_string(q));
        d["hits"] = hits;
        return d;
      },
      py::arg("system"), py::arg("alpha"), py::arg("x"), py::arg("radius"), py::arg("h"),
      "Hit count N(h; alpha) in exact arithmetic.");

  m.def(
      "partial_measure_sum",
      [](const std::vector<std::string>& x, const py::object& radius, unsigned s, std::uint64_t horizon,
         const std::string& meas) {
        std::vector<stp::CircleMeasure> ms(x.size(), measure(meas, stp::SystemSpec::mult_expanding()));
        return sum_dict(stp::partial_measure_sum(ms, rats(x), stp::app::radius_from_json(to_json(radius)), s, stp::BigInt(horizon)));
      },
      py::arg("x"), py::arg("radius"), py::arg("s") = 1, py::arg("horizon"), py::arg("measure") = "lebesgue");

  m.def(
      "counterexample_radius",
      [](const py::object& spec, const std::string& x, std::size_t count, const std::string& meas) {
        auto s = system(spec);
        auto times = stp::recurrence_times(s, stp::CirclePoint::exact(rat(x)), count);
        return to_py(stp::app::radius_to_json(stp::make_counterexample(measure(meas, s), rat(x), times)));
      },
      py::arg("system"), py::arg("x"), py::arg("count"), py::arg("measure") = "lebesgue",
      "The sequence r_{n_k} = 2 t_k on the first best-return times.");

  m.def(
      "tail_unions",
      [](const py::object& spec, const std::string& x, const py::object& radius, std::size_t K, const std::string& meas) {
        auto s = system(spec);
        auto m = measure(meas, s);
        auto route = m.kind() == stp::CircleMeasure::Kind::Lebesgue ? stp::UnionRoute::Lebesgue : stp::UnionRoute::Cdf;
        auto p = stp::tail_union_profile(s, rat(x), stp::app::radius_from_json(to_json(radius)), K, m, route);
        std::vector<double> u;
        for (const auto& v : p.u) u.push_back(stp::to_double(v));
        py::dict d;
        d["u"] = u;
        d["error_bound"] = stp::to_string(p.error_bound);
        d["ball_sum"] = sum_dict(p.ball_sum);
        return d;
      },
      py::arg("system"), py::arg("x"), py::arg("radius"), py::arg("K"), py::arg("measure") = "lebesgue",
      "U_l for l = 1..K.");
}
