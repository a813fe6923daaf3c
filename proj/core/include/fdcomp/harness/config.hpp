#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fdcomp/channel.hpp"
#include "fdcomp/distortion_model.hpp"
#include "fdcomp/fading.hpp"
#include "fdcomp/optimizer.hpp"
#include "fdcomp/wavelet_codec.hpp"

namespace fdcomp::harness {

enum class SignalSource { synthetic, csv };

/// Which distortion model feeds the objective: the published reference
/// parameters or a fit to the configured signal.
enum class ModelSource { reference, fitted };

/// Where a resolved value came from.
///   reference  published simulation parameter, unchanged
///   default    artifact default (no published value), unchanged
///   user       set in the config file or on the command line
enum class Provenance { reference, artifact_default, user };

const char* to_string(SignalSource source);
const char* to_string(ModelSource source);
const char* to_string(Provenance provenance);

struct ScenarioConfig {
  // [signal]
  SignalSource signal_source = SignalSource::synthetic;
  std::string csv_path;
  double fs = 2000.0;
  int n_bits = 12;
  double duration_s = 32.768;

  // [codec]
  codec::WaveletConfig codec;

  // [link]
  channel::LinkParams link;

  // [fading] (fading.seed is ignored; run.seed drives every generator)
  channel::FadingConfig fading;

  // [objective]
  double lambda = 0.5;
  std::optional<double> beta;
  distortion::ExpDistortionModel model = distortion::reference_model();
  ModelSource model_source = ModelSource::reference;

  // [fit]
  double fit_kappa_min = 0.1;
  double fit_kappa_max = 0.9;
  std::size_t fit_points = 20;

  // [run]
  double kappa_grid_step = 1e-3;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  bool per_sample = false;

  /// "section.key" names that were set explicitly.
  std::set<std::string> user_keys;

  /// Objective parameters with the configured model (not a fitted one).
  opt::ObjectiveParams objective() const;
  channel::FadingConfig fading_config() const;
};

/// One line of the resolved configuration, in file order.
struct ConfigEntry {
  std::string key;  // "section.key"
  std::string value;
  Provenance provenance;
};

/// Throws ValidationError naming the offending key.
void validate(const ScenarioConfig& cfg);

/// Parses INI text. Unknown sections or keys are rejected, as are
/// malformed numbers. `origin` is used in error messages.
ScenarioConfig parse_config(std::istream& in, const std::string& origin = "<config>");

/// parse_config on a file; a missing or unreadable file raises ConfigError.
ScenarioConfig load_config(const std::filesystem::path& path);

std::vector<ConfigEntry> resolved_entries(const ScenarioConfig& cfg);

/// Human-readable listing of every resolved value with its provenance,
/// each line prefixed by `prefix`.
std::string banner(const ScenarioConfig& cfg, const std::string& prefix = "");

}  // namespace fdcomp::harness
