#include "fdcomp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fdcomp/errors.hpp"

namespace fdcomp::opt {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Rate backoff below the capacity pole when the stationary point sits on it.
constexpr double kCapacityBackoff = 1e-6;
constexpr double kFallbackStep = 1e-4;

void check_gain(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("h", "channel gain must be finite and > 0");
}

// Noise term of dU/dR scaled by lambda / P_max.
double weighted_noise(const ObjectiveParams& p) { return p.link.noise_power_w() * p.lambda / p.link.p_max_w; }

double weighted_slope(const ObjectiveParams& p) { return p.model.b * (1.0 - p.lambda) / p.resolved_beta(); }

Solution finish(double r, double h, const ObjectiveParams& params, Clamp clamp, Solver solver) {
  Solution s;
  const double nfs = params.source_rate();
  s.r_star = r;
  s.kappa_star = std::clamp(1.0 - r / nfs, 0.0, 1.0);
  s.chi = std::exp2(r / params.link.bandwidth_hz);
  s.power = channel::required_power(r, h, params.link);
  s.distortion = distortion::eval_distortion(params.model, r);
  s.objective = objective_u(r, h, params);
  s.clamped = clamp;
  s.solver = solver;
  s.r_stationary = kNaN;
  s.chi_stationary = kNaN;
  s.quadratic_residual = kNaN;
  s.curvature = kNaN;
  return s;
}

// Largest-rate boundary: no compression if the source rate is feasible,
// otherwise just below the capacity pole.
Solution max_rate_boundary(double h, const ObjectiveParams& params, Solver solver) {
  const double nfs = params.source_rate();
  const double cap = channel::capacity_limit(h, params.link);
  if (nfs < cap) return finish(nfs, h, params, Clamp::at_zero_compression, solver);
  return finish(cap * (1.0 - kCapacityBackoff), h, params, Clamp::at_capacity, solver);
}

}  // namespace

double ObjectiveParams::resolved_beta() const { return beta ? *beta : std::log(model.a); }

void validate(const ObjectiveParams& params) {
  if (!(params.lambda >= 0.0 && params.lambda <= 1.0)) {
    throw ValidationError("objective.lambda",
                          "weight must satisfy 0 <= lambda <= 1, got " + std::to_string(params.lambda));
  }
  if (!(params.model.a > 0.0) || !std::isfinite(params.model.a)) {
    throw ValidationError("model.a", "distortion at zero rate must be finite and > 0");
  }
  if (!std::isfinite(params.model.b)) throw ValidationError("model.b", "decay rate must be finite");
  const double beta = params.resolved_beta();
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ValidationError("objective.beta",
                          params.beta ? "normalization factor must be finite and > 0"
                                      : "default beta = ln(a) is not positive; set beta explicitly");
  }
  if (!(params.fs > 0.0)) throw ValidationError("signal.fs", "sampling frequency must be > 0");
  if (params.n_bits < 1) throw ValidationError("signal.n_bits", "bits per sample must be >= 1");
  channel::validate(params.link);
}

const char* to_string(Clamp clamp) {
  switch (clamp) {
    case Clamp::none:
      return "none";
    case Clamp::at_zero_compression:
      return "at_zero_compression";
    case Clamp::at_full_compression:
      return "at_full_compression";
    case Clamp::at_capacity:
      return "at_capacity";
  }
  return "unknown";
}

const char* to_string(Solver solver) {
  switch (solver) {
    case Solver::closed_form:
      return "closed_form";
    case Solver::boundary:
      return "boundary";
    case Solver::exhaustive:
      return "exhaustive";
    case Solver::exhaustive_fallback:
      return "exhaustive_fallback";
  }
  return "unknown";
}

double StationarityQuadratic::relative_residual(double chi) const {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) return 0.0;
  return std::abs((*this)(chi)) / scale;
}

StationarityQuadratic stationarity_quadratic(double h, const ObjectiveParams& params) {
  const double bw = params.link.bandwidth_hz;
  const double mu = params.link.si_quality;
  const double bt = weighted_slope(params);
  const double c1 = std::numbers::ln2 * h * weighted_noise(params);
  const double c2 = -h - mu;
  return {bt * bw * mu * mu, 2.0 * bt * bw * mu * c2 + c1, bt * bw * c2 * c2};
}

SearchGrid::SearchGrid(std::vector<double> kappa_values) : values_(std::move(kappa_values)) {
  if (values_.empty()) throw ValidationError("grid", "search grid must not be empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double k = values_[i];
    if (!(k >= 0.0 && k <= 1.0)) throw ValidationError("grid", "ratios must lie in [0, 1]");
    if (i > 0 && !(k > values_[i - 1])) {
      throw ValidationError("grid", "ratios must be strictly increasing");
    }
  }
}

SearchGrid SearchGrid::uniform(double step) {
  if (!(step > 0.0 && step < 1.0)) throw ValidationError("kappa_grid_step", "step must lie in (0, 1)");
  const double intervals = 1.0 / step;
  const auto whole = static_cast<std::size_t>(std::llround(intervals));
  std::vector<double> values;
  if (std::abs(intervals - static_cast<double>(whole)) < 1e-9 * intervals) {
    values.reserve(whole + 1);
    for (std::size_t i = 0; i <= whole; ++i) values.push_back(static_cast<double>(i) / static_cast<double>(whole));
  } else {
    for (std::size_t i = 0; static_cast<double>(i) * step < 1.0; ++i) values.push_back(static_cast<double>(i) * step);
    values.push_back(1.0);
  }
  return SearchGrid(std::move(values));
}

double normalized_power(double r, double h, const ObjectiveParams& params) {
  return channel::required_power(r, h, params.link) / params.link.p_max_w;
}

double normalized_distortion(double r, const ObjectiveParams& params) {
  return distortion::log_distortion(params.model, r) / params.resolved_beta();
}

double objective_u(double r, double h, const ObjectiveParams& params) {
  return params.lambda * normalized_power(r, h, params) + (1.0 - params.lambda) * normalized_distortion(r, params);
}

double derivative_du_dr(double r, double h, const ObjectiveParams& params) {
  check_gain(h);
  const double cap = channel::capacity_limit(h, params.link);
  if (!(r >= 0.0) || r >= cap) throw InfeasibleRateError("rate outside [0, capacity limit)");
  const double bw = params.link.bandwidth_hz;
  const double chi = std::exp2(r / bw);
  const double den = channel::power_denominator(r, h, params.link);
  const double c1 = std::numbers::ln2 * h * weighted_noise(params);
  return c1 * chi / (bw * den * den) + weighted_slope(params);
}

double second_derivative_du_dr(double r, double h, const ObjectiveParams& params) {
  check_gain(h);
  const double cap = channel::capacity_limit(h, params.link);
  if (!(r >= 0.0) || r >= cap) throw InfeasibleRateError("rate outside [0, capacity limit)");
  const double bw = params.link.bandwidth_hz;
  const double mu = params.link.si_quality;
  const double chi = std::exp2(r / bw);
  const double den = channel::power_denominator(r, h, params.link);
  const double c1 = std::numbers::ln2 * h * weighted_noise(params);
  return (c1 / bw) * (std::numbers::ln2 * chi / bw) * (den + 2.0 * mu * chi) / (den * den * den);
}

Solution evaluate_at_kappa(double kappa, double h, const ObjectiveParams& params) {
  validate(params);
  check_gain(h);
  const double r = distortion::generated_rate(params.fs, params.n_bits, kappa);
  Solution s = finish(r, h, params, Clamp::none, Solver::exhaustive);
  s.kappa_star = kappa;
  return s;
}

Solution solve_closed_form(double h, const ObjectiveParams& params) {
  validate(params);
  check_gain(h);

  if (params.lambda == 1.0) return finish(0.0, h, params, Clamp::at_full_compression, Solver::boundary);
  if (params.model.b >= 0.0) {
    Solution s = exhaustive_search(h, params, SearchGrid::uniform(kFallbackStep));
    s.solver = Solver::exhaustive_fallback;
    return s;
  }
  const double noise = weighted_noise(params);
  if (params.lambda == 0.0 || noise == 0.0) return max_rate_boundary(h, params, Solver::boundary);

  const double bw = params.link.bandwidth_hz;
  const double mu = params.link.si_quality;
  const double bt = weighted_slope(params);
  const double c1 = std::numbers::ln2 * h * noise;

  // chi - 1 of the stationary point, solved in the shifted variable
  // y = mu chi - h - mu, where the quadratic reads y^2 + k y - k c2 = 0 with
  // k = c1 / (mu b~ B) < 0 and c2 = -h - mu. The root with y < 0 is the one
  // below the capacity pole; taking it as (-k - sqrt(k^2 + 4 k c2)) / 2 adds
  // two same-signed terms, so it keeps full precision even when the
  // stationary point sits within a fraction of a bit/s of the pole.
  double chi_minus_one = 0.0;
  if (mu > 0.0) {
    const double c2 = -h - mu;
    const double k = c1 / (mu * bt * bw);
    const double y = 0.5 * (-k - std::sqrt(k * k + 4.0 * k * c2));
    chi_minus_one = (h + y) / mu;
  } else {
    chi_minus_one = -bt * bw * h * h / c1 - 1.0;
  }

  const double chi = 1.0 + chi_minus_one;
  const double r_stat = chi_minus_one > -1.0 ? bw * std::log1p(chi_minus_one) / std::numbers::ln2
                                             : -std::numeric_limits<double>::infinity();
  const double nfs = params.source_rate();
  const double cap = channel::capacity_limit(h, params.link);

  Solution s;
  if (!(r_stat > 0.0)) {
    s = finish(0.0, h, params, Clamp::at_full_compression, Solver::closed_form);
  } else if (nfs < cap && r_stat >= nfs) {
    s = finish(nfs, h, params, Clamp::at_zero_compression, Solver::closed_form);
  } else if (r_stat >= cap) {
    s = finish(cap * (1.0 - kCapacityBackoff), h, params, Clamp::at_capacity, Solver::closed_form);
  } else {
    s = finish(r_stat, h, params, Clamp::none, Solver::closed_form);
    s.chi = chi;
  }

  s.r_stationary = r_stat;
  s.chi_stationary = chi;
  s.quadratic_residual = stationarity_quadratic(h, params).relative_residual(chi);
  if (r_stat >= 0.0 && r_stat < cap) s.curvature = second_derivative_du_dr(r_stat, h, params);
  return s;
}

Solution exhaustive_search(double h, const ObjectiveParams& params, const SearchGrid& grid) {
  validate(params);
  check_gain(h);
  const double nfs = params.source_rate();
  const double cap = channel::capacity_limit(h, params.link);

  double best_kappa = kNaN;
  double best_u = std::numeric_limits<double>::infinity();
  for (double kappa : grid.values()) {
    const double r = nfs * (1.0 - kappa);
    if (r >= cap) continue;
    const double u = objective_u(r, h, params);
    if (u <= best_u) {
      best_u = u;
      best_kappa = kappa;
    }
  }
  if (std::isnan(best_kappa)) {
    throw InfeasibilityError("no grid ratio gives a rate below the capacity limit " + std::to_string(cap));
  }
  Solution s = evaluate_at_kappa(best_kappa, h, params);
  s.solver = Solver::exhaustive;
  return s;
}

double hd_objective(double kappa, double h, const ObjectiveParams& params) {
  validate(params);
  const double r = distortion::generated_rate(params.fs, params.n_bits, kappa);
  const double power = channel::hd_required_power(r, h, params.link) / params.link.p_max_w;
  return params.lambda * power + (1.0 - params.lambda) * normalized_distortion(r, params);
}

FdHdComparison compare_fd_hd(double h, const ObjectiveParams& params, const SearchGrid& grid) {
  FdHdComparison out;
  out.fd = solve_closed_form(h, params);
  const double cap = channel::capacity_limit(h, params.link);
  out.hd_min = std::numeric_limits<double>::infinity();
  for (double kappa : grid.values()) {
    const double u_hd = hd_objective(kappa, h, params);
    const double r = distortion::generated_rate(params.fs, params.n_bits, kappa);
    out.kappa.push_back(kappa);
    out.hd_objective.push_back(u_hd);
    out.fd_objective.push_back(r < cap ? objective_u(r, h, params) : kNaN);
    if (u_hd <= out.hd_min) {
      out.hd_min = u_hd;
      out.hd_argmin_kappa = kappa;
    }
  }
  out.margin = out.hd_min - out.fd.objective;
  return out;
}

}  // namespace fdcomp::opt
