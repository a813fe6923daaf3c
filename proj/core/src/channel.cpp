#include "fdcomp/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fdcomp/errors.hpp"

namespace fdcomp::channel {
namespace {

void check_gain(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("h", "channel gain must be finite and > 0");
}

}  // namespace

const char* to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::density:
      return "density";
    case NoiseMode::power:
      return "power";
  }
  return "unknown";
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double LinkParams::noise_level_w() const { return dbm_to_watts(noise_dbm); }

double LinkParams::noise_power_w() const {
  return noise_mode == NoiseMode::density ? noise_level_w() * bandwidth_hz : noise_level_w();
}

double LinkParams::hd_noise_power_w() const {
  return noise_mode == NoiseMode::density ? noise_level_w() * hd_bandwidth_hz() : noise_level_w();
}

void validate(const LinkParams& link) {
  if (!(link.bandwidth_hz > 0.0) || !std::isfinite(link.bandwidth_hz)) {
    throw ValidationError("link.bandwidth", "bandwidth must be finite and > 0");
  }
  if (!std::isfinite(link.noise_dbm)) throw ValidationError("link.noise_dbm", "noise level must be finite");
  if (!(link.si_quality >= 0.0) || !std::isfinite(link.si_quality)) {
    throw ValidationError("link.si_quality", "SI quality mu must be finite and >= 0");
  }
  if (!(link.p_max_w > 0.0) || !std::isfinite(link.p_max_w)) {
    throw ValidationError("link.p_max", "maximum power must be finite and > 0");
  }
  if (!(link.hd_bandwidth_share > 0.0 && link.hd_bandwidth_share <= 1.0)) {
    throw ValidationError("link.hd_bandwidth_share", "half-duplex share must lie in (0, 1]");
  }
}

double capacity_limit(double h, const LinkParams& link) {
  check_gain(h);
  if (link.si_quality == 0.0) return std::numeric_limits<double>::infinity();
  return link.bandwidth_hz * std::log1p(h / link.si_quality) / std::numbers::ln2;
}

double achievable_rate(double p, double h, const LinkParams& link) {
  check_gain(h);
  if (!(p >= 0.0)) throw ValidationError("p", "transmit power must be >= 0");
  if (std::isinf(p)) return capacity_limit(h, link);
  const double sinr = h * p / (link.noise_power_w() + link.si_quality * p);
  return link.bandwidth_hz * std::log1p(sinr) / std::numbers::ln2;
}

double power_denominator(double r, double h, const LinkParams& link) {
  if (link.si_quality == 0.0) return h;
  const double cap = capacity_limit(h, link);
  const double scale = std::numbers::ln2 / link.bandwidth_hz;
  return link.si_quality * std::exp(r * scale) * std::expm1((cap - r) * scale);
}

double required_power(double r, double h, const LinkParams& link) {
  check_gain(h);
  if (!(r >= 0.0)) throw ValidationError("r", "rate must be >= 0");
  const double cap = capacity_limit(h, link);
  if (r >= cap) {
    throw InfeasibleRateError("rate " + std::to_string(r) + " bit/s is at or above the capacity limit " +
                              std::to_string(cap) + " bit/s");
  }
  const double excess = std::expm1(r * std::numbers::ln2 / link.bandwidth_hz);
  return link.noise_power_w() * excess / power_denominator(r, h, link);
}

double hd_required_power(double r, double h, const LinkParams& link) {
  check_gain(h);
  if (!(r >= 0.0)) throw ValidationError("r", "rate must be >= 0");
  const double excess = std::expm1(r * std::numbers::ln2 / link.hd_bandwidth_hz());
  return link.hd_noise_power_w() * excess / h;
}

}  // namespace fdcomp::channel
