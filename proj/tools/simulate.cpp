#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "fdcomp/errors.hpp"
#include "fdcomp/harness/config.hpp"
#include "fdcomp/harness/scenarios.hpp"
#include "fdcomp/version.hpp"

namespace {

enum ExitCode : int { kOk = 0, kFailure = 1, kValidation = 2, kInfeasible = 3 };

int run(const std::string& scenario, const std::string& config_path, std::optional<std::uint64_t> seed,
        std::optional<std::string> out_dir, bool per_sample) {
  using namespace fdcomp::harness;
  ScenarioConfig cfg = load_config(config_path);
  if (seed) {
    cfg.seed = *seed;
    cfg.user_keys.insert("run.seed");
  }
  if (out_dir) {
    cfg.output_dir = *out_dir;
    cfg.user_keys.insert("run.output_dir");
  }
  if (per_sample) {
    cfg.per_sample = true;
    cfg.user_keys.insert("run.per_sample");
  }
  validate(cfg);

  std::cerr << "fdcomp " << fdcomp::version() << "  scenario " << scenario << '\n' << banner(cfg, "  ");

  const ScenarioResult result = run_scenario(scenario, cfg);
  const auto path = write_result(result, cfg.output_dir);
  for (const auto& line : result.summary) std::cout << line << '\n';
  std::cout << "wrote " << path.string() << '\n';
  if (!result.passed) {
    std::cerr << "error: " << result.failure << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power/distortion trade-off simulator for full-duplex biosignal links"};
  app.set_version_flag("--version", std::string(fdcomp::version()));

  std::string scenario;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  bool per_sample = false;

  app.add_option("scenario", scenario, "tradeoff | optimality | fd-hd | fit")
      ->required()
      ->check(CLI::IsMember(fdcomp::harness::scenario_names()));
  app.add_option("-c,--config", config_path, "INI configuration file")->required();
  app.add_option("--seed", seed, "Override run.seed");
  app.add_option("-o,--out", out_dir, "Override run.output_dir");
  app.add_flag("--per-sample", per_sample, "Use every trace sample instead of the trace-mean gain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    return run(scenario, config_path, seed, out_dir, per_sample);
  } catch (const fdcomp::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const fdcomp::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kValidation;
  } catch (const fdcomp::UndefinedMetricError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const fdcomp::InfeasibilityError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const fdcomp::InfeasibleRateError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
