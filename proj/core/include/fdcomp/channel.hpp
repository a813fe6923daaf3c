#pragma once

namespace fdcomp::channel {

/// How the configured noise level enters the SINR.
///
/// `density`: the level is a spectral density N0 (dBm/Hz) and the noise power
/// is N0 * B. `power`: the level is used directly as a noise power (dBm).
enum class NoiseMode { density, power };

const char* to_string(NoiseMode mode);

struct LinkParams {
  double bandwidth_hz = 30e3;
  double noise_dbm = -174.0;  // dBm/Hz in density mode, dBm in power mode
  NoiseMode noise_mode = NoiseMode::density;
  double si_quality = 1e-3;  // mu: residual SI per watt transmitted
  double p_max_w = 1.0;
  double hd_bandwidth_share = 0.5;  // fraction of B a half-duplex link gets per direction

  /// N0 in W/Hz (density mode) or W (power mode).
  double noise_level_w() const;
  /// Full-duplex noise power sigma^2 in watts.
  double noise_power_w() const;
  /// Noise power seen by the half-duplex baseline on its share of the band.
  double hd_noise_power_w() const;
  double hd_bandwidth_hz() const { return bandwidth_hz * hd_bandwidth_share; }
};

/// Throws ValidationError naming the offending field.
void validate(const LinkParams& link);

double dbm_to_watts(double dbm);

/// B * log2(1 + h/mu); +infinity when mu == 0.
double capacity_limit(double h, const LinkParams& link);

/// B * log2(1 + h p / (sigma^2 + mu p)).
double achievable_rate(double p, double h, const LinkParams& link);

/// Inverse of `achievable_rate`:
/// sigma^2 (2^{r/B} - 1) / (h - mu (2^{r/B} - 1)).
///
/// Throws InfeasibleRateError iff r >= capacity_limit(h, link).
double required_power(double r, double h, const LinkParams& link);

/// h - mu (2^{r/B} - 1), the denominator of `required_power`, evaluated as
/// mu 2^{r/B} (2^{(C - r)/B} - 1) so it stays positive for every r below the
/// computed capacity limit C. Precondition: r < C.
double power_denominator(double r, double h, const LinkParams& link);

/// Half-duplex baseline: share*B of bandwidth, no self-interference.
/// sigma_hd^2 (2^{r/(share B)} - 1) / h.
double hd_required_power(double r, double h, const LinkParams& link);

}  // namespace fdcomp::channel
