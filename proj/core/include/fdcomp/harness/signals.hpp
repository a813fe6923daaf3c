#pragma once

#include <cstdint>
#include <filesystem>

#include "fdcomp/fading.hpp"
#include "fdcomp/harness/config.hpp"
#include "fdcomp/wavelet_codec.hpp"

namespace fdcomp::harness {

/// Deterministic synthetic EEG with unit RMS and round(fs * duration_s) samples.
///
/// Delta, theta, alpha and beta oscillations (three random tones per band)
/// plus 1/f^2 background noise. Every component is amplitude-modulated by
/// its own slow log-normal envelope, which gives the bursty, sparse
/// wavelet-domain structure of real recordings.
codec::SignalFrame synth_eeg(double fs, double duration_s, std::uint64_t seed, int n_bits = 12);

/// Single-column numeric CSV with an optional `amplitude` header row.
/// Blank lines and lines starting with '#' are ignored.
///
/// Throws ValidationError for empty files, non-numeric rows and all-zero
/// signals (PRD is undefined against a zero-norm reference).
codec::SignalFrame load_signal_csv(const std::filesystem::path& path, double fs, int n_bits);

/// Writes `amplitude` plus one sample per row with 17 significant digits,
/// so load_signal_csv reads back identical values.
void write_signal_csv(const std::filesystem::path& path, const codec::SignalFrame& frame);

/// Single column with header `h`, 9 significant digits.
void write_trace_csv(const std::filesystem::path& path, const channel::ChannelTrace& trace);

/// Synthetic or CSV signal as selected by the config.
codec::SignalFrame load_signal(const ScenarioConfig& cfg);

}  // namespace fdcomp::harness
