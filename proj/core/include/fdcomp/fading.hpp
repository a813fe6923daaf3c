#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fdcomp::channel {

/// Flat Rayleigh fading with a Clarke/Jakes Doppler spectrum.
struct FadingConfig {
  double doppler_hz = 0.1;
  double sample_time_s = 0.1;
  double mean_gain = 1.0;
  std::uint64_t seed = 1;
  std::size_t length = 1000;
  /// Number of sinusoids in the sum-of-sinusoids generator. Odd counts avoid
  /// pairs of components with exactly opposite Doppler shifts.
  int sinusoids = 65;
};

void validate(const FadingConfig& cfg);

/// Channel power gains h_t = mean_gain * |g_t|^2.
struct ChannelTrace {
  std::vector<double> gains;

  double mean() const;
};

/// Unit-power complex envelope g_t, t = 0 .. length-1, sampled every
/// sample_time_s:
///
///   g(t) = M^{-1/2} sum_m exp(j (2 pi f_d cos(alpha_m) t + phi_m)),
///   alpha_m = 2 pi (m + 1/8) / M.
///
/// The equally spaced arrival angles make E[g(t) g*(t + tau)] a trapezoidal
/// approximation of J0(2 pi f_d tau) that is exact to round-off for
/// f_d tau well below M / (2 pi). Phases phi_m are drawn from `seed`.
std::vector<std::complex<double>> generate_complex_gains(const FadingConfig& cfg);

/// Deterministic in (cfg, seed). Gains are clamped to the smallest positive
/// normal double so every entry stays strictly positive.
ChannelTrace generate_fading_trace(const FadingConfig& cfg);

}  // namespace fdcomp::channel
