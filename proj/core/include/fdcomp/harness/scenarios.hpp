#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fdcomp/distortion_model.hpp"
#include "fdcomp/harness/config.hpp"
#include "fdcomp/harness/csv.hpp"

namespace fdcomp::harness {

/// Output of one scenario run. `passed` is false when a runner's own check
/// fails (non-monotone trade-off, poor fit); the CSV is still complete.
struct ScenarioResult {
  std::string scenario;
  CsvDocument csv{{}};
  std::vector<std::string> summary;  // "key = value" lines, also in the CSV header
  bool passed = true;
  std::string failure;
};

/// Names accepted by run_scenario: tradeoff, optimality, fd-hd, fit.
const std::vector<std::string>& scenario_names();

/// Reference parameters, or a fit to the configured signal when
/// objective.model = fitted.
distortion::ExpDistortionModel resolve_model(const ScenarioConfig& cfg);

/// P~ and D~ against kappa at the trace-mean gain (every trace sample with
/// per_sample). Checks that P~ strictly falls and D~ strictly rises in kappa.
///
/// Columns: scenario, sample, h, kappa, rate_bps, power_w, p_norm,
/// distortion_pct, d_norm, objective
ScenarioResult run_tradeoff_sweep(const ScenarioConfig& cfg);

/// Closed form against the grid oracle for every trace sample, followed by
/// a `max` row holding the largest objective gap and the largest ratio gap
/// among unclamped samples.
///
/// Columns: scenario, sample, h, kappa_closed, kappa_oracle, u_closed,
/// u_oracle, u_gap, kappa_gap, power_w, p_norm, distortion_pct, d_norm,
/// solver, clamp
ScenarioResult run_optimality_check(const ScenarioConfig& cfg);

/// Half-duplex objective against kappa next to the full-duplex optimum.
///
/// Columns: scenario, sample, h, kappa, u_hd, u_fd, u_fd_star, kappa_star,
/// margin, solver, clamp
ScenarioResult run_fd_hd_comparison(const ScenarioConfig& cfg);

/// Codec sweep, exponential fit and per-point residuals. Fails when the
/// log-domain R^2 of a synthetic-signal fit is below 0.95.
///
/// Columns: scenario, kappa, rate_bps, prd_pct, prd_fit_pct, ln_residual
ScenarioResult run_distortion_fit(const ScenarioConfig& cfg);

/// Throws ValidationError("scenario", ...) for unknown names.
ScenarioResult run_scenario(std::string_view name, const ScenarioConfig& cfg);

/// Writes <dir>/<scenario>.csv, creating `dir` if needed.
std::filesystem::path write_result(const ScenarioResult& result, const std::filesystem::path& dir);

}  // namespace fdcomp::harness
