#pragma once

// Experiment configs, their JSON form, and the runner behind `stplab run`.

#include "stp/experiments.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace stp::app {

using Json = nlohmann::json;

inline constexpr const char* kVersion = STP_VERSION;

/// Experiments accepted by `run`.
const std::vector<std::string>& experiment_names();

/// The full default config of an experiment.
Json default_config(const std::string& experiment);

/// Defaults overlaid with `overrides` (objects merge key by key). Throws ConfigError
/// on unknown experiments, unknown keys or ill-typed values.
Json resolve_config(const std::string& experiment, const Json& overrides);

Json radius_to_json(const RadiusSequence& r);
RadiusSequence radius_from_json(const Json& j);

SystemSpec system_from_json(const Json& j);
Json system_to_json(const SystemSpec& s);

/// "lebesgue", "cantor" or "denjoy" (the latter needs a Denjoy system).
CircleMeasure measure_from_json(const Json& j, const SystemSpec& s);

/// Rational fields are written as "p/q" strings; numbers are accepted on input.
Rational rational_from_json(const Json& j);

/// Value with its error bound, plus the exact rational when it is short.
Json measured(const Rational& value, const Rational& error_bound);

/// sup over x = i/grid of d(h(f(x)), h(x) + theta).
Rational semiconjugacy_defect(const DenjoyMap& map, unsigned grid);

/// The oracle checks run by the oracle-suite experiment.
std::vector<OracleReport> oracle_suite(const Json& config);

struct RunOutcome {
  int exit_code = 0;
  Json summary;
  std::vector<std::filesystem::path> files;
};

/// Runs a resolved config and writes CSV and JSON into config["out"].
/// Config errors (exit 2) are thrown before any file is written; precision and
/// budget failures return exit 3 with a summary flagged "partial".
RunOutcome run(const Json& config);

}  // namespace stp::app
