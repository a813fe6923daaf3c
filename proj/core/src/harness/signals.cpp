#include "fdcomp/harness/signals.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fdcomp/errors.hpp"
#include "fdcomp/harness/csv.hpp"

namespace fdcomp::harness {
namespace {

struct Band {
  double lo_hz;
  double hi_hz;
  double weight;
};

constexpr Band kBands[] = {{0.5, 4.0, 1.0}, {4.0, 8.0, 0.6}, {8.0, 13.0, 0.8}, {13.0, 30.0, 0.4}};
constexpr int kTonesPerBand = 3;
constexpr double kEnvelopeDepth = 2.0;
constexpr double kEnvelopeCutoffHz = 1.0;
constexpr double kNoiseWeight = 0.5;
constexpr double kNoiseExponent = 2.0;

double rms(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

void scale(std::vector<double>& x, double factor) {
  for (double& v : x) v *= factor;
}

// y[n] = (1 - p) x[n] + p y[n-1], p = exp(-2 pi fc / fs)
void one_pole(std::vector<double>& x, double fc, double fs) {
  const double p = std::exp(-2.0 * std::numbers::pi * fc / fs);
  double y = 0.0;
  for (double& v : x) {
    y = (1.0 - p) * v + p * y;
    v = y;
  }
}

// Octave bank of one-pole lowpass filters on white noise, weighted so the
// spectrum falls off roughly as 1/f^gamma above f0. Unit RMS.
std::vector<double> colored_noise(std::size_t n, double fs, double gamma, double f0, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out(n, 0.0);
  std::vector<double> w(n);
  for (double fc = f0; fc < fs / 2.0; fc *= 2.0) {
    for (double& v : w) v = normal(rng);
    one_pole(w, fc, fs);
    const double weight = std::pow(fc, -(1.0 + gamma / 2.0));
    for (std::size_t i = 0; i < n; ++i) out[i] += weight * w[i];
  }
  scale(out, 1.0 / rms(out));
  return out;
}

std::vector<double> envelope(std::size_t n, double fs, std::mt19937_64& rng) {
  std::vector<double> e = colored_noise(n, fs, 2.0, 0.1, rng);
  one_pole(e, kEnvelopeCutoffHz, fs);
  double mean = 0.0;
  for (double v : e) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : e) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(n));
  for (double& v : e) v = std::exp(kEnvelopeDepth * v / sd);
  return e;
}

[[noreturn]] void bad_row(const std::filesystem::path& path, std::size_t line, const std::string& text) {
  throw ValidationError("signal.csv_path",
                        path.string() + ":" + std::to_string(line) + ": expected one number, got '" + text + "'");
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

codec::SignalFrame synth_eeg(double fs, double duration_s, std::uint64_t seed, int n_bits) {
  if (!(fs > 0.0) || !std::isfinite(fs)) throw ValidationError("signal.fs", "must be finite and > 0");
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
    throw ValidationError("signal.duration", "must be finite and > 0");
  }
  const auto n = static_cast<std::size_t>(std::llround(fs * duration_s));
  if (n < 2) throw ValidationError("signal.duration", "fs * duration must give at least 2 samples");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(n, 0.0);
  std::vector<double> comp(n);

  for (const Band& band : kBands) {
    std::fill(comp.begin(), comp.end(), 0.0);
    for (int k = 0; k < kTonesPerBand; ++k) {
      const double f = band.lo_hz + (band.hi_hz - band.lo_hz) * unit(rng);
      const double phase = 2.0 * std::numbers::pi * unit(rng);
      const double amp = 0.5 + 0.5 * unit(rng);
      for (std::size_t i = 0; i < n; ++i) {
        comp[i] += amp * std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / fs + phase);
      }
    }
    const auto env = envelope(n, fs, rng);
    for (std::size_t i = 0; i < n; ++i) comp[i] *= env[i];
    const double w = band.weight / rms(comp);
    for (std::size_t i = 0; i < n; ++i) x[i] += w * comp[i];
  }

  auto noise = colored_noise(n, fs, kNoiseExponent, 0.25, rng);
  const auto env = envelope(n, fs, rng);
  for (std::size_t i = 0; i < n; ++i) noise[i] *= env[i];

  const double xs = 1.0 / rms(x);
  const double ns = kNoiseWeight / rms(noise);
  for (std::size_t i = 0; i < n; ++i) x[i] = xs * x[i] + ns * noise[i];
  scale(x, 1.0 / rms(x));
  return codec::make_frame(std::move(x), fs, n_bits);
}

codec::SignalFrame load_signal_csv(const std::filesystem::path& path, double fs, int n_bits) {
  std::ifstream in(path);
  if (!in) throw ValidationError("signal.csv_path", "cannot open '" + path.string() + "'");

  std::vector<double> samples;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    if (!seen_data && text == "amplitude") {
      seen_data = true;
      continue;
    }
    seen_data = true;
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) bad_row(path, line_no, text);
    samples.push_back(v);
  }
  if (samples.empty()) throw ValidationError("signal.csv_path", "'" + path.string() + "' contains no samples");
  bool all_zero = true;
  for (double v : samples) all_zero = all_zero && v == 0.0;
  if (all_zero) {
    throw ValidationError("signal.csv_path",
                          "'" + path.string() + "' is all zeros; PRD is undefined for a zero-norm signal");
  }
  return codec::make_frame(std::move(samples), fs, n_bits);
}

void write_signal_csv(const std::filesystem::path& path, const codec::SignalFrame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << "amplitude\n";
  char buf[40];
  for (double v : frame.samples) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out << buf;
  }
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

void write_trace_csv(const std::filesystem::path& path, const channel::ChannelTrace& trace) {
  CsvDocument doc({"h"});
  for (double h : trace.gains) doc.row() << h;
  doc.write_file(path);
}

codec::SignalFrame load_signal(const ScenarioConfig& cfg) {
  if (cfg.signal_source == SignalSource::csv) return load_signal_csv(cfg.csv_path, cfg.fs, cfg.n_bits);
  return synth_eeg(cfg.fs, cfg.duration_s, cfg.seed, cfg.n_bits);
}

}  // namespace fdcomp::harness
