#include "fdcomp/fading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "fdcomp/errors.hpp"

namespace fdcomp::channel {

void validate(const FadingConfig& cfg) {
  if (!(cfg.doppler_hz >= 0.0) || !std::isfinite(cfg.doppler_hz)) {
    throw ValidationError("fading.doppler", "Doppler frequency must be finite and >= 0");
  }
  if (!(cfg.sample_time_s > 0.0) || !std::isfinite(cfg.sample_time_s)) {
    throw ValidationError("fading.sample_time", "sample time must be finite and > 0");
  }
  if (!(cfg.mean_gain > 0.0) || !std::isfinite(cfg.mean_gain)) {
    throw ValidationError("fading.mean_gain", "mean gain must be finite and > 0");
  }
  if (cfg.length == 0) throw ValidationError("fading.length", "trace length must be >= 1");
  if (cfg.sinusoids < 1) throw ValidationError("fading.sinusoids", "need at least one sinusoid");
}

double ChannelTrace::mean() const {
  if (gains.empty()) return 0.0;
  return std::accumulate(gains.begin(), gains.end(), 0.0) / static_cast<double>(gains.size());
}

std::vector<std::complex<double>> generate_complex_gains(const FadingConfig& cfg) {
  validate(cfg);
  const auto count = static_cast<std::size_t>(cfg.sinusoids);
  constexpr double kAngleOffset = 0.125;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);

  std::vector<double> omega(count);
  std::vector<double> phase(count);
  for (std::size_t m = 0; m < count; ++m) {
    const double alpha =
        2.0 * std::numbers::pi * (static_cast<double>(m) + kAngleOffset) / static_cast<double>(count);
    omega[m] = 2.0 * std::numbers::pi * cfg.doppler_hz * std::cos(alpha) * cfg.sample_time_s;
    phase[m] = uniform(rng);
  }

  const double norm = 1.0 / std::sqrt(static_cast<double>(count));
  std::vector<std::complex<double>> g(cfg.length);
  for (std::size_t t = 0; t < cfg.length; ++t) {
    std::complex<double> acc{0.0, 0.0};
    const double tt = static_cast<double>(t);
    for (std::size_t m = 0; m < count; ++m) acc += std::polar(1.0, omega[m] * tt + phase[m]);
    g[t] = acc * norm;
  }
  return g;
}

ChannelTrace generate_fading_trace(const FadingConfig& cfg) {
  const auto g = generate_complex_gains(cfg);
  ChannelTrace trace;
  trace.gains.resize(g.size());
  constexpr double kFloor = std::numeric_limits<double>::min();
  std::transform(g.begin(), g.end(), trace.gains.begin(),
                 [&](std::complex<double> z) { return std::max(cfg.mean_gain * std::norm(z), kFloor); });
  return trace;
}

}  // namespace fdcomp::channel
