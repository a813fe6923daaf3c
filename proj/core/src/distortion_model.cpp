#include "fdcomp/distortion_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdcomp/errors.hpp"

namespace fdcomp::distortion {

ExpDistortionModel reference_model() { return ExpDistortionModel{88.63, -0.0001767, {}, {}}; }

double generated_rate(double fs, int n_bits, double kappa) {
  if (!(fs > 0.0)) throw ValidationError("fs", "sampling frequency must be > 0");
  if (n_bits < 1) throw ValidationError("n_bits", "bits per sample must be >= 1");
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw ValidationError("kappa", "compression ratio must lie in [0, 1]");
  }
  return static_cast<double>(n_bits) * fs * (1.0 - kappa);
}

std::vector<RateDistortionSample> sweep_rate_distortion(const codec::SignalFrame& frame,
                                                        const codec::WaveletConfig& cfg,
                                                        std::span<const double> kappa_grid) {
  if (kappa_grid.empty()) throw ValidationError("kappa_grid", "grid must not be empty");
  for (double k : kappa_grid) {
    if (!(k >= 0.0 && k <= 1.0)) {
      throw ValidationError("kappa_grid", "every ratio must lie in [0, 1], got " + std::to_string(k));
    }
  }

  const auto coeffs = codec::dwt_forward(frame, cfg);
  const auto order = codec::magnitude_order(coeffs.coeffs);
  const std::size_t n = coeffs.coeffs.size();

  std::vector<RateDistortionSample> out;
  out.reserve(kappa_grid.size());
  for (double kappa : kappa_grid) {
    auto trimmed = coeffs;
    const std::size_t k = codec::zero_count(kappa, n);
    for (std::size_t i = 0; i < k; ++i) trimmed.coeffs[order[i]] = 0.0;
    const auto recon = codec::dwt_inverse(trimmed, cfg);
    const double realized = static_cast<double>(k) / static_cast<double>(n);
    out.push_back({realized, generated_rate(frame.fs, frame.n_bits, realized),
                   codec::prd(frame, recon)});
  }
  return out;
}

ExpDistortionModel fit_exponential(std::span<const RateDistortionSample> samples) {
  std::vector<double> rs;
  std::vector<double> y;
  std::vector<double> d;
  for (const auto& s : samples) {
    if (s.d > 0.0) {
      rs.push_back(s.rs);
      y.push_back(std::log(s.d));
      d.push_back(s.d);
    }
  }
  if (rs.size() < 2) {
    throw DegenerateFitError("need at least two samples with positive distortion, have " +
                             std::to_string(rs.size()));
  }

  const double m = static_cast<double>(rs.size());
  double r_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    r_mean += rs[i];
    y_mean += y[i];
  }
  r_mean /= m;
  y_mean /= m;

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double dr = rs[i] - r_mean;
    const double dy = y[i] - y_mean;
    sxx += dr * dr;
    sxy += dr * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw DegenerateFitError("all sample rates are identical");

  const double b = sxy / sxx;
  const double ln_a = y_mean - b * r_mean;

  double ss_res = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double e = y[i] - (ln_a + b * rs[i]);
    ss_res += e * e;
  }
  double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  r2 = std::clamp(r2, 0.0, 1.0);

  const double a = std::exp(ln_a);
  double d_mean = 0.0;
  for (double v : d) d_mean += v;
  d_mean /= m;
  double lin_res = 0.0;
  double lin_tot = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double e = d[i] - a * std::exp(b * rs[i]);
    lin_res += e * e;
    lin_tot += (d[i] - d_mean) * (d[i] - d_mean);
  }
  const double r2_lin = lin_tot > 0.0 ? 1.0 - lin_res / lin_tot : 1.0;

  return ExpDistortionModel{a, b, r2, r2_lin};
}

double eval_distortion(const ExpDistortionModel& model, double rs) {
  if (!(rs >= 0.0)) throw ValidationError("rs", "generated rate must be >= 0");
  return model.a * std::exp(model.b * rs);
}

double log_distortion(const ExpDistortionModel& model, double rs) {
  if (!(rs >= 0.0)) throw ValidationError("rs", "generated rate must be >= 0");
  return std::log(model.a) + model.b * rs;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count == 0) throw ValidationError("count", "grid needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  const double span = hi - lo;
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = lo + span * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  grid.back() = hi;
  return grid;
}

}  // namespace fdcomp::distortion
