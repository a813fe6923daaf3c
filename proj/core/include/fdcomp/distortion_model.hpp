#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fdcomp/wavelet_codec.hpp"

namespace fdcomp::distortion {

struct RateDistortionSample {
  double kappa = 0.0;  // compression ratio that produced the sample
  double rs = 0.0;     // generated rate, bit/s
  double d = 0.0;      // PRD, percent
};

/// D(Rs) = a * exp(b * Rs).
///
/// `r_squared` is the coefficient of determination of the log-domain fit;
/// `r_squared_linear` is the same statistic for the fitted curve against the
/// raw distortions (may be negative for poor fits). Both are empty for
/// models that were not fitted here.
struct ExpDistortionModel {
  double a = 0.0;  // percent, distortion at zero rate
  double b = 0.0;  // per bit/s
  std::optional<double> r_squared;
  std::optional<double> r_squared_linear;
};

/// Published reference parameters: a = 88.63 %, b = -1.767e-4 per bit/s.
ExpDistortionModel reference_model();

/// Rs = n_bits * fs * (1 - kappa).
double generated_rate(double fs, int n_bits, double kappa);

/// One sample per grid entry; the transform is computed once and re-thresholded.
std::vector<RateDistortionSample> sweep_rate_distortion(const codec::SignalFrame& frame,
                                                        const codec::WaveletConfig& cfg,
                                                        std::span<const double> kappa_grid);

/// Ordinary least squares of ln(d) on rs. Samples with d == 0 are skipped.
///
/// Throws DegenerateFitError when fewer than two positive-distortion samples
/// remain or all their rates coincide.
ExpDistortionModel fit_exponential(std::span<const RateDistortionSample> samples);

double eval_distortion(const ExpDistortionModel& model, double rs);

/// ln D(Rs) = ln a + b * Rs, evaluated without the exp/log round trip.
double log_distortion(const ExpDistortionModel& model, double rs);

/// `count` evenly spaced ratios from `lo` to `hi` inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

}  // namespace fdcomp::distortion
