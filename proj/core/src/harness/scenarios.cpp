#include "fdcomp/harness/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fdcomp/channel.hpp"
#include "fdcomp/errors.hpp"
#include "fdcomp/fading.hpp"
#include "fdcomp/harness/signals.hpp"
#include "fdcomp/optimizer.hpp"
#include "fdcomp/version.hpp"

namespace fdcomp::harness {
namespace {

constexpr double kMinFitR2 = 0.95;

struct GainPoint {
  std::string label;  // trace index, or "mean"
  double h;
};

std::vector<GainPoint> gain_points(const ScenarioConfig& cfg, const channel::ChannelTrace& trace) {
  std::vector<GainPoint> out;
  if (cfg.per_sample) {
    out.reserve(trace.gains.size());
    for (std::size_t i = 0; i < trace.gains.size(); ++i) out.push_back({std::to_string(i), trace.gains[i]});
  } else {
    out.push_back({"mean", trace.mean()});
  }
  return out;
}

opt::ObjectiveParams objective_for(const ScenarioConfig& cfg, const distortion::ExpDistortionModel& model) {
  opt::ObjectiveParams p = cfg.objective();
  p.model = model;
  if (cfg.model_source == ModelSource::fitted && !cfg.beta && !(model.a > 1.0)) {
    throw ValidationError("objective.beta", "fitted a = " + format_number(model.a) +
                                                " gives ln(a) <= 0; set objective.beta explicitly");
  }
  opt::validate(p);
  return p;
}

void add_metadata(ScenarioResult& result, const ScenarioConfig& cfg, const distortion::ExpDistortionModel* model) {
  CsvDocument& doc = result.csv;
  doc.add_comment(std::string("fdcomp ") + version() + " scenario=" + result.scenario);
  const auto& link = cfg.link;
  std::ostringstream noise;
  if (link.noise_mode == channel::NoiseMode::density) {
    noise << "noise: " << format_number(link.noise_dbm) << " dBm/Hz density times B = "
          << format_number(link.noise_power_w()) << " W (noise_mode=density)";
  } else {
    noise << "noise: " << format_number(link.noise_dbm) << " dBm used directly as power = "
          << format_number(link.noise_power_w()) << " W (noise_mode=power)";
  }
  doc.add_comment(noise.str());
  if (model != nullptr) {
    std::string line = "distortion model: a=" + format_number(model->a) + " b=" + format_number(model->b);
    if (model->r_squared) line += " r2=" + format_number(*model->r_squared);
    line += " (" + std::string(to_string(cfg.model_source)) + ")";
    doc.add_comment(line);
  }
  doc.add_comment("resolved configuration [provenance]:");
  doc.add_comment_block(banner(cfg, "  "));
}

void add_summary(ScenarioResult& result, const std::string& key, const std::string& value) {
  result.summary.push_back(key + " = " + value);
}

void finalize_summary(ScenarioResult& result) {
  result.csv.add_comment("summary:");
  for (const auto& line : result.summary) result.csv.add_comment("  " + line);
}

// Strictly monotone in the given direction, except that a single repeated
// value (a plateau one grid step wide) is tolerated.
bool strictly_monotone(const std::vector<double>& v, bool increasing) {
  std::size_t flat_run = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double step = increasing ? v[i] - v[i - 1] : v[i - 1] - v[i];
    if (step < 0.0) return false;
    flat_run = step == 0.0 ? flat_run + 1 : 0;
    if (flat_run > 1) return false;
  }
  return true;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"tradeoff", "optimality", "fd-hd", "fit"};
  return names;
}

distortion::ExpDistortionModel resolve_model(const ScenarioConfig& cfg) {
  if (cfg.model_source == ModelSource::reference) return cfg.model;
  const auto frame = load_signal(cfg);
  const auto grid = distortion::linear_grid(cfg.fit_kappa_min, cfg.fit_kappa_max, cfg.fit_points);
  const auto samples = distortion::sweep_rate_distortion(frame, cfg.codec, grid);
  return distortion::fit_exponential(samples);
}

ScenarioResult run_tradeoff_sweep(const ScenarioConfig& cfg) {
  validate(cfg);
  const auto model = resolve_model(cfg);
  const auto params = objective_for(cfg, model);
  const auto trace = channel::generate_fading_trace(cfg.fading_config());
  const auto grid = opt::SearchGrid::uniform(cfg.kappa_grid_step);

  ScenarioResult result;
  result.scenario = "tradeoff";
  result.csv = CsvDocument({"scenario", "sample", "h", "kappa", "rate_bps", "power_w", "p_norm", "distortion_pct",
                            "d_norm", "objective"});
  add_metadata(result, cfg, &model);

  std::size_t skipped = 0;
  std::size_t non_monotone = 0;
  for (const auto& point : gain_points(cfg, trace)) {
    const double cap = channel::capacity_limit(point.h, params.link);
    std::vector<double> p_norm;
    std::vector<double> d_norm;
    for (double kappa : grid.values()) {
      const double r = distortion::generated_rate(params.fs, params.n_bits, kappa);
      if (r >= cap) {
        ++skipped;
        continue;
      }
      const double power = channel::required_power(r, point.h, params.link);
      const double pn = power / params.link.p_max_w;
      const double dn = opt::normalized_distortion(r, params);
      p_norm.push_back(pn);
      d_norm.push_back(dn);
      result.csv.row() << "tradeoff" << point.label << point.h << kappa << r << power << pn
                       << distortion::eval_distortion(params.model, r) << dn
                       << params.lambda * pn + (1.0 - params.lambda) * dn;
    }
    if (!strictly_monotone(p_norm, false) || !strictly_monotone(d_norm, true)) ++non_monotone;
  }

  add_summary(result, "infeasible_points_skipped", std::to_string(skipped));
  add_summary(result, "non_monotone_curves", std::to_string(non_monotone));
  if (non_monotone > 0) {
    result.passed = false;
    result.failure = std::to_string(non_monotone) + " trade-off curve(s) are not strictly monotone in kappa";
  }
  finalize_summary(result);
  return result;
}

ScenarioResult run_optimality_check(const ScenarioConfig& cfg) {
  validate(cfg);
  const auto model = resolve_model(cfg);
  const auto params = objective_for(cfg, model);
  const auto trace = channel::generate_fading_trace(cfg.fading_config());
  const auto grid = opt::SearchGrid::uniform(cfg.kappa_grid_step);

  ScenarioResult result;
  result.scenario = "optimality";
  result.csv = CsvDocument({"scenario", "sample", "h", "kappa_closed", "kappa_oracle", "u_closed", "u_oracle", "u_gap",
                            "kappa_gap", "power_w", "p_norm", "distortion_pct", "d_norm", "solver", "clamp"});
  add_metadata(result, cfg, &model);

  double max_u_gap = 0.0;
  double max_kappa_gap = 0.0;
  std::size_t worst = 0;
  std::size_t unclamped = 0;
  std::vector<opt::Solution> closed(trace.gains.size());
  std::vector<opt::Solution> oracle(trace.gains.size());
  for (std::size_t i = 0; i < trace.gains.size(); ++i) {
    const double h = trace.gains[i];
    closed[i] = opt::solve_closed_form(h, params);
    oracle[i] = opt::exhaustive_search(h, params, grid);
    const double u_gap = std::abs(closed[i].objective - oracle[i].objective);
    const double k_gap = std::abs(closed[i].kappa_star - oracle[i].kappa_star);
    if (u_gap > max_u_gap || i == 0) {
      max_u_gap = u_gap;
      worst = i;
    }
    if (closed[i].clamped == opt::Clamp::none) {
      ++unclamped;
      max_kappa_gap = std::max(max_kappa_gap, k_gap);
    }
    const auto& s = closed[i];
    result.csv.row() << "optimality" << std::to_string(i) << h << s.kappa_star << oracle[i].kappa_star << s.objective
                     << oracle[i].objective << u_gap << k_gap << s.power << s.power / params.link.p_max_w
                     << s.distortion << opt::normalized_distortion(s.r_star, params) << opt::to_string(s.solver)
                     << opt::to_string(s.clamped);
  }
  if (!trace.gains.empty()) {
    const auto& s = closed[worst];
    result.csv.row() << "optimality" << "max" << trace.gains[worst] << s.kappa_star << oracle[worst].kappa_star
                     << s.objective << oracle[worst].objective << max_u_gap << max_kappa_gap << s.power
                     << s.power / params.link.p_max_w << s.distortion
                     << opt::normalized_distortion(s.r_star, params) << opt::to_string(s.solver)
                     << opt::to_string(s.clamped);
  }

  add_summary(result, "samples", std::to_string(trace.gains.size()));
  add_summary(result, "unclamped_samples", std::to_string(unclamped));
  add_summary(result, "grid_step", format_number(cfg.kappa_grid_step));
  add_summary(result, "max_u_gap", format_number(max_u_gap));
  add_summary(result, "max_kappa_gap_unclamped", format_number(max_kappa_gap));
  finalize_summary(result);
  return result;
}

ScenarioResult run_fd_hd_comparison(const ScenarioConfig& cfg) {
  validate(cfg);
  const auto model = resolve_model(cfg);
  const auto params = objective_for(cfg, model);
  const auto trace = channel::generate_fading_trace(cfg.fading_config());
  const auto grid = opt::SearchGrid::uniform(cfg.kappa_grid_step);

  ScenarioResult result;
  result.scenario = "fd-hd";
  result.csv = CsvDocument({"scenario", "sample", "h", "kappa", "u_hd", "u_fd", "u_fd_star", "kappa_star", "margin",
                            "solver", "clamp"});
  add_metadata(result, cfg, &model);

  std::size_t fd_wins = 0;
  std::size_t points = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (const auto& point : gain_points(cfg, trace)) {
    const auto cmp = opt::compare_fd_hd(point.h, params, grid);
    for (std::size_t k = 0; k < cmp.kappa.size(); ++k) {
      result.csv.row() << "fd-hd" << point.label << point.h << cmp.kappa[k] << cmp.hd_objective[k]
                       << cmp.fd_objective[k] << cmp.fd.objective << cmp.fd.kappa_star << cmp.margin
                       << opt::to_string(cmp.fd.solver) << opt::to_string(cmp.fd.clamped);
    }
    ++points;
    if (cmp.margin >= 0.0) ++fd_wins;
    min_margin = std::min(min_margin, cmp.margin);
    if (!cfg.per_sample) {
      add_summary(result, "u_fd_star", format_number(cmp.fd.objective));
      add_summary(result, "kappa_star", format_number(cmp.fd.kappa_star));
      add_summary(result, "u_hd_min", format_number(cmp.hd_min));
      add_summary(result, "kappa_hd_argmin", format_number(cmp.hd_argmin_kappa));
    }
  }
  add_summary(result, "min_margin", format_number(min_margin));
  add_summary(result, "fd_at_or_below_hd_min", std::to_string(fd_wins) + "/" + std::to_string(points));
  finalize_summary(result);
  return result;
}

ScenarioResult run_distortion_fit(const ScenarioConfig& cfg) {
  validate(cfg);
  const auto frame = load_signal(cfg);
  const auto grid = distortion::linear_grid(cfg.fit_kappa_min, cfg.fit_kappa_max, cfg.fit_points);
  const auto samples = distortion::sweep_rate_distortion(frame, cfg.codec, grid);
  const auto model = distortion::fit_exponential(samples);
  const auto reference = distortion::reference_model();

  ScenarioResult result;
  result.scenario = "fit";
  result.csv = CsvDocument({"scenario", "kappa", "rate_bps", "prd_pct", "prd_fit_pct", "ln_residual"});
  add_metadata(result, cfg, &model);

  for (const auto& s : samples) {
    const double fitted = distortion::eval_distortion(model, s.rs);
    const double residual = s.d > 0.0 ? std::log(s.d) - distortion::log_distortion(model, s.rs)
                                      : std::numeric_limits<double>::quiet_NaN();
    result.csv.row() << "fit" << s.kappa << s.rs << s.d << fitted << residual;
  }

  const double r2 = model.r_squared.value_or(0.0);
  add_summary(result, "samples", std::to_string(frame.samples.size()));
  add_summary(result, "fit_a", format_number(model.a));
  add_summary(result, "fit_b", format_number(model.b));
  add_summary(result, "r_squared_log", format_number(r2));
  add_summary(result, "r_squared_linear", format_number(model.r_squared_linear.value_or(0.0)));
  add_summary(result, "reference_a", format_number(reference.a));
  add_summary(result, "reference_b", format_number(reference.b));
  if (cfg.signal_source == SignalSource::synthetic && r2 < kMinFitR2) {
    result.passed = false;
    result.failure = "log-domain R^2 " + format_number(r2) + " is below " + format_number(kMinFitR2);
  }
  finalize_summary(result);
  return result;
}

ScenarioResult run_scenario(std::string_view name, const ScenarioConfig& cfg) {
  if (name == "tradeoff") return run_tradeoff_sweep(cfg);
  if (name == "optimality") return run_optimality_check(cfg);
  if (name == "fd-hd") return run_fd_hd_comparison(cfg);
  if (name == "fit") return run_distortion_fit(cfg);
  throw ValidationError("scenario", "unknown scenario '" + std::string(name) + "'");
}

std::filesystem::path write_result(const ScenarioResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  const auto path = dir / (result.scenario + ".csv");
  result.csv.write_file(path);
  return path;
}

}  // namespace fdcomp::harness
