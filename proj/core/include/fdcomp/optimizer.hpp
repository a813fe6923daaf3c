#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fdcomp/channel.hpp"
#include "fdcomp/distortion_model.hpp"

namespace fdcomp::opt {

/// Weighted power/distortion objective
///
///   U(R) = lambda * P(R) / P_max + (1 - lambda) * ln D(R) / beta
///
/// with the transmission rate pinned to the generated rate,
/// R = n_bits * fs * (1 - kappa).
struct ObjectiveParams {
  double lambda = 0.5;
  /// Normalization of ln D. Empty means ln(model.a), which maps ln D onto
  /// (-inf, 1] with 1 at zero rate.
  std::optional<double> beta;
  channel::LinkParams link;
  distortion::ExpDistortionModel model = distortion::reference_model();
  double fs = 2000.0;
  int n_bits = 12;

  double resolved_beta() const;
  double source_rate() const { return static_cast<double>(n_bits) * fs; }
};

/// Throws ValidationError; lambda outside [0, 1] and a non-positive beta are
/// reported against "objective.lambda" / "objective.beta".
void validate(const ObjectiveParams& params);

enum class Clamp { none, at_zero_compression, at_full_compression, at_capacity };
enum class Solver { closed_form, boundary, exhaustive, exhaustive_fallback };

const char* to_string(Clamp clamp);
const char* to_string(Solver solver);

struct Solution {
  double r_star = 0.0;      // bit/s
  double kappa_star = 0.0;  // in [0, 1]
  double chi = 1.0;         // 2^{r_star / B}
  double power = 0.0;       // W
  double distortion = 0.0;  // percent
  double objective = 0.0;
  Clamp clamped = Clamp::none;
  Solver solver = Solver::closed_form;
  /// Stationary rate before clamping (closed form only; NaN otherwise).
  double r_stationary = 0.0;
  /// chi of the stationary point before clamping.
  double chi_stationary = 1.0;
  /// |q(chi)| / max |coefficient| of the stationarity quadratic at chi_stationary.
  double quadratic_residual = 0.0;
  /// Second derivative of U at the stationary point (> 0 for a minimum).
  double curvature = 0.0;
};

/// Coefficients of  A chi^2 + B chi + C = 0  whose admissible root is the
/// stationary point of U in chi = 2^{R/B}.
struct StationarityQuadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double chi) const { return (a * chi + b) * chi + c; }
  double relative_residual(double chi) const;
};

StationarityQuadratic stationarity_quadratic(double h, const ObjectiveParams& params);

/// Sorted, unique compression ratios in [0, 1].
class SearchGrid {
 public:
  explicit SearchGrid(std::vector<double> kappa_values);

  /// 0, step, 2 step, ..., 1 (1 is always included).
  static SearchGrid uniform(double step);

  const std::vector<double>& values() const& { return values_; }
  std::vector<double> values() && { return std::move(values_); }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

double normalized_power(double r, double h, const ObjectiveParams& params);
double normalized_distortion(double r, const ObjectiveParams& params);

/// Throws InfeasibleRateError when r >= capacity_limit(h).
double objective_u(double r, double h, const ObjectiveParams& params);

/// dU/dR = ln2 h N~ 2^{R/B} / (B (mu 2^{R/B} - h - mu)^2) + b~,
/// N~ = sigma^2 lambda / P_max, b~ = b (1 - lambda) / beta.
double derivative_du_dr(double r, double h, const ObjectiveParams& params);

/// d^2U/dR^2 (analytic).
double second_derivative_du_dr(double r, double h, const ObjectiveParams& params);

/// Solution evaluated at a given compression ratio (no optimization).
Solution evaluate_at_kappa(double kappa, double h, const ObjectiveParams& params);

/// Closed-form minimizer.
///
/// Solves the stationarity quadratic for chi, keeps the root with
/// 1 <= chi < 1 + h/mu, and clamps the resulting rate into the feasible
/// compression range. lambda in {0, 1} returns boundary solutions directly;
/// a non-decaying model (b >= 0) falls back to `exhaustive_search` on a
/// 1e-4 grid.
Solution solve_closed_form(double h, const ObjectiveParams& params);

/// Grid oracle. Ties go to the larger kappa.
/// Throws InfeasibilityError when no grid point is feasible.
Solution exhaustive_search(double h, const ObjectiveParams& params, const SearchGrid& grid);

/// U with the half-duplex power in place of the full-duplex one.
double hd_objective(double kappa, double h, const ObjectiveParams& params);

struct FdHdComparison {
  Solution fd;
  std::vector<double> kappa;
  std::vector<double> hd_objective;
  std::vector<double> fd_objective;  // FD objective at the same kappa; NaN where infeasible
  double hd_min = 0.0;
  double hd_argmin_kappa = 0.0;
  /// hd_min - fd.objective; >= 0 means full duplex wins.
  double margin = 0.0;
};

FdHdComparison compare_fd_hd(double h, const ObjectiveParams& params, const SearchGrid& grid);

}  // namespace fdcomp::opt
