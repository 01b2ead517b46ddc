// stplab: run shrinking-target experiments from a JSON config and flags.

#include "runner.hpp"

#include "stp/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using stp::app::Json;

Json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw stp::ConfigError("cannot read config " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw stp::ConfigError(std::string("malformed config: ") + e.what());
  }
}

Json point_value(const std::string& text) {
  Json out = Json::array();
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    out.push_back(text.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shrinking target experiments"};
  app.set_version_flag("--version", stp::app::kVersion);
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one experiment");
  std::string experiment, config_path, out, backend, measure, point;
  std::optional<std::uint64_t> horizon, samples, seed, bits, threads;
  run->add_option("experiment", experiment, "Experiment name")->required()->check(CLI::IsMember(stp::app::experiment_names()));
  run->add_option("--config", config_path, "JSON config file");
  run->add_option("--horizon", horizon, "Horizon h (or K, or n_max)");
  run->add_option("--samples", samples, "Number of sampled points");
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--bits", bits, "Random bits per coordinate");
  run->add_option("--threads", threads, "Worker threads (0: all cores)");
  run->add_option("--backend", backend, "Arithmetic for sampled points")->check(CLI::IsMember({"rational", "fixed"}));
  run->add_option("--out", out, "Output directory");
  run->add_option("--measure", measure, "lebesgue, cantor or denjoy");
  run->add_option("--point", point, "Target point, comma separated per coordinate");

  auto* show = app.add_subcommand("config", "Print the default config of an experiment");
  std::string show_name;
  show->add_option("experiment", show_name, "Experiment name")->required()->check(CLI::IsMember(stp::app::experiment_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*show) {
    std::cout << stp::app::default_config(show_name).dump(2) << "\n";
    return 0;
  }

  try {
    Json overrides = config_path.empty() ? Json::object() : load_config(config_path);
    overrides.erase("experiment");
    if (horizon) overrides["horizon"] = *horizon;
    if (samples) overrides["samples"]["count"] = *samples;
    if (seed) overrides["samples"]["seed"] = *seed;
    if (bits) overrides["samples"]["bits"] = *bits;
    if (threads) overrides["samples"]["threads"] = *threads;
    if (!backend.empty()) overrides["backend"] = backend;
    if (!out.empty()) overrides["out"] = out;
    if (!measure.empty()) overrides["measure"] = measure;
    if (!point.empty()) overrides["point"] = point_value(point);

    Json config = stp::app::resolve_config(experiment, overrides);
    auto outcome = stp::app::run(config);
    for (const auto& f : outcome.files) std::cout << f.string() << "\n";
    if (experiment == "classify-support") std::cout << outcome.summary["result"].dump(2) << "\n";
    if (outcome.exit_code == 3) std::cerr << "stplab: " << outcome.summary["error"].get<std::string>() << "\n";
    return outcome.exit_code;
  } catch (const stp::ConfigError& e) {
    std::cerr << "stplab: config error: " << e.what() << "\n";
    return 2;
  } catch (const stp::PrecisionExhausted& e) {
    std::cerr << "stplab: " << e.what() << "\n";
    return 3;
  } catch (const stp::BudgetExceeded& e) {
    std::cerr << "stplab: " << e.what() << "\n";
    return 3;
  } catch (const stp::ToleranceExceeded& e) {
    std::cerr << "stplab: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "stplab: " << e.what() << "\n";
    return 1;
  }
}
