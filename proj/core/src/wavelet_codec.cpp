#include "fdcomp/wavelet_codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fdcomp/errors.hpp"

namespace fdcomp::codec {
namespace {

void check_ratio(double kappa, const char* field) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw ValidationError(field, "compression ratio must lie in [0, 1], got " +
                                     std::to_string(kappa));
  }
}

void check_config(const WaveletConfig& cfg) {
  (void)daubechies_lowpass(cfg.family_order);
  if (cfg.levels < 1) {
    throw ValidationError("codec.levels", "decomposition depth must be >= 1");
  }
}

std::vector<double> highpass_from(std::span<const double> lo) {
  const std::size_t taps = lo.size();
  std::vector<double> hi(taps);
  for (std::size_t j = 0; j < taps; ++j) {
    const double sign = (j % 2 == 0) ? -1.0 : 1.0;
    hi[j] = sign * lo[taps - 1 - j];
  }
  return hi;
}

// One periodized analysis step on x[0, n): approximation to out[0, n/2),
// detail to out[n/2, n).
void analyze(std::span<const double> x, std::span<double> out, std::span<const double> lo,
             std::span<const double> hi) {
  const std::size_t n = x.size();
  const std::size_t half = n / 2;
  const std::size_t taps = lo.size();
  const std::size_t shift = taps / 2;
  for (std::size_t k = 0; k < half; ++k) {
    double a = 0.0;
    double d = 0.0;
    // (2k + shift - j) mod n, kept non-negative by adding a multiple of n.
    const std::size_t base = 2 * k + shift + n * (taps / n + 1);
    for (std::size_t j = 0; j < taps; ++j) {
      const double v = x[(base - j) % n];
      a += lo[j] * v;
      d += hi[j] * v;
    }
    out[k] = a;
    out[half + k] = d;
  }
}

// Transpose of `analyze`.
void synthesize(std::span<const double> in, std::span<double> x, std::span<const double> lo,
                std::span<const double> hi) {
  const std::size_t n = x.size();
  const std::size_t half = n / 2;
  const std::size_t taps = lo.size();
  const std::size_t shift = taps / 2;
  std::fill(x.begin(), x.end(), 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    const double a = in[k];
    const double d = in[half + k];
    const std::size_t base = 2 * k + shift + n * (taps / n + 1);
    for (std::size_t j = 0; j < taps; ++j) {
      x[(base - j) % n] += lo[j] * a + hi[j] * d;
    }
  }
}

std::vector<std::size_t> expected_offsets(std::size_t n, int levels) {
  std::vector<std::size_t> offsets;
  offsets.reserve(static_cast<std::size_t>(levels) + 2);
  offsets.push_back(0);
  for (int l = levels; l >= 1; --l) offsets.push_back(n >> l);
  offsets.push_back(n);
  return offsets;
}

}  // namespace

SignalFrame make_frame(std::vector<double> samples, double fs, int n_bits) {
  SignalFrame frame{std::move(samples), fs, n_bits};
  validate(frame);
  return frame;
}

void validate(const SignalFrame& frame) {
  if (frame.samples.empty()) throw ValidationError("samples", "signal frame is empty");
  for (std::size_t i = 0; i < frame.samples.size(); ++i) {
    if (!std::isfinite(frame.samples[i])) {
      throw ValidationError("samples", "non-finite sample at index " + std::to_string(i));
    }
  }
  if (!(frame.fs > 0.0) || !std::isfinite(frame.fs)) {
    throw ValidationError("signal.fs", "sampling frequency must be > 0");
  }
  if (frame.n_bits < 1) throw ValidationError("signal.n_bits", "bits per sample must be >= 1");
}

int max_levels(std::size_t length, int family_order) {
  const double support = 2.0 * family_order - 1.0;
  if (length == 0 || static_cast<double>(length) < support) return 0;
  return static_cast<int>(std::floor(std::log2(static_cast<double>(length) / support)));
}

std::size_t padded_length(std::size_t length) { return std::bit_ceil(std::max<std::size_t>(length, 1)); }

CoefficientVector dwt_forward(const SignalFrame& frame, const WaveletConfig& cfg) {
  validate(frame);
  check_config(cfg);
  const std::size_t n = padded_length(frame.samples.size());
  const int allowed = max_levels(n, cfg.family_order);
  if (cfg.levels > allowed) {
    throw ConfigError("frame of " + std::to_string(frame.samples.size()) + " samples (padded to " +
                      std::to_string(n) + ") supports at most " + std::to_string(allowed) +
                      " levels of db" + std::to_string(cfg.family_order) + ", requested " +
                      std::to_string(cfg.levels));
  }

  const auto lo = daubechies_lowpass(cfg.family_order);
  const auto hi = highpass_from(lo);

  std::vector<double> buf(n, 0.0);
  std::copy(frame.samples.begin(), frame.samples.end(), buf.begin());
  std::vector<double> scratch(n);

  std::size_t len = n;
  for (int level = 0; level < cfg.levels; ++level) {
    analyze(std::span<const double>(buf.data(), len), std::span<double>(scratch.data(), len), lo,
            hi);
    std::copy_n(scratch.begin(), len, buf.begin());
    len /= 2;
  }

  return CoefficientVector{std::move(buf), expected_offsets(n, cfg.levels), frame.samples.size(),
                           frame.fs, frame.n_bits};
}

SignalFrame dwt_inverse(const CoefficientVector& coeffs, const WaveletConfig& cfg) {
  check_config(cfg);
  const std::size_t n = coeffs.coeffs.size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw ShapeError("coefficient count " + std::to_string(n) + " is not a power of two");
  }
  if (coeffs.signal_length == 0 || padded_length(coeffs.signal_length) != n) {
    throw ShapeError("signal length " + std::to_string(coeffs.signal_length) +
                     " does not pad to coefficient count " + std::to_string(n));
  }
  if (coeffs.band_offsets != expected_offsets(n, cfg.levels)) {
    throw ShapeError("band layout does not match a " + std::to_string(cfg.levels) +
                     "-level decomposition of length " + std::to_string(n));
  }
  if (cfg.levels > max_levels(n, cfg.family_order)) {
    throw ConfigError("coefficient count " + std::to_string(n) + " too short for " +
                      std::to_string(cfg.levels) + " levels");
  }

  const auto lo = daubechies_lowpass(cfg.family_order);
  const auto hi = highpass_from(lo);

  std::vector<double> buf = coeffs.coeffs;
  std::vector<double> scratch(n);
  std::size_t len = n >> cfg.levels;
  for (int level = 0; level < cfg.levels; ++level) {
    len *= 2;
    synthesize(std::span<const double>(buf.data(), len), std::span<double>(scratch.data(), len),
               lo, hi);
    std::copy_n(scratch.begin(), len, buf.begin());
  }
  buf.resize(coeffs.signal_length);
  return SignalFrame{std::move(buf), coeffs.fs, coeffs.n_bits};
}

std::size_t zero_count(double kappa_target, std::size_t n) {
  check_ratio(kappa_target, "kappa");
  const double scaled = kappa_target * static_cast<double>(n);
  const auto k = static_cast<std::size_t>(std::ceil(scaled - 1e-9));
  return std::min(k, n);
}

std::vector<std::size_t> magnitude_order(std::span<const double> coeffs) {
  std::vector<std::size_t> order(coeffs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(coeffs[a]) < std::abs(coeffs[b]);
  });
  return order;
}

double threshold_for_ratio(std::span<const double> coeffs, double kappa_target) {
  const std::size_t k = zero_count(kappa_target, coeffs.size());
  if (k == 0) return 0.0;
  std::vector<double> mags(coeffs.size());
  std::transform(coeffs.begin(), coeffs.end(), mags.begin(), [](double c) { return std::abs(c); });
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(k - 1), mags.end());
  return std::nextafter(mags[k - 1], std::numeric_limits<double>::infinity());
}

double threshold_for_ratio(const CoefficientVector& coeffs, double kappa_target) {
  return threshold_for_ratio(std::span<const double>(coeffs.coeffs), kappa_target);
}

double apply_threshold(CoefficientVector& coeffs, double delta) {
  if (coeffs.coeffs.empty()) return 0.0;
  std::size_t zeroed = 0;
  for (double& c : coeffs.coeffs) {
    if (std::abs(c) < delta) {
      c = 0.0;
      ++zeroed;
    }
  }
  return static_cast<double>(zeroed) / static_cast<double>(coeffs.coeffs.size());
}

CompressionResult compress_coefficients(const CoefficientVector& coeffs, double kappa) {
  const std::size_t n = coeffs.coeffs.size();
  const std::size_t k = zero_count(kappa, n);
  CompressionResult result{coeffs, 0.0, 0.0, k};
  if (k == 0 || n == 0) return result;

  const auto order = magnitude_order(coeffs.coeffs);
  for (std::size_t i = 0; i < k; ++i) result.kept.coeffs[order[i]] = 0.0;
  result.kappa = static_cast<double>(k) / static_cast<double>(n);
  result.delta = std::nextafter(std::abs(coeffs.coeffs[order[k - 1]]),
                                std::numeric_limits<double>::infinity());
  return result;
}

CompressionResult compress(const SignalFrame& frame, const WaveletConfig& cfg, double kappa) {
  check_ratio(kappa, "kappa");
  return compress_coefficients(dwt_forward(frame, cfg), kappa);
}

double prd(std::span<const double> original, std::span<const double> reconstructed) {
  if (original.size() != reconstructed.size()) {
    throw ShapeError("PRD length mismatch: " + std::to_string(original.size()) + " vs " +
                     std::to_string(reconstructed.size()));
  }
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < original.size(); ++i) {
    const double e = original[i] - reconstructed[i];
    err += e * e;
    ref += original[i] * original[i];
  }
  if (!(ref > 0.0)) throw UndefinedMetricError("PRD is undefined for a zero-norm original signal");
  return 100.0 * (std::sqrt(err) / std::sqrt(ref));
}

double prd(const SignalFrame& original, const SignalFrame& reconstructed) {
  return prd(std::span<const double>(original.samples),
             std::span<const double>(reconstructed.samples));
}

}  // namespace fdcomp::codec
