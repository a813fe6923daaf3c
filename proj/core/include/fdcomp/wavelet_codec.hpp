#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fdcomp::codec {

/// A finite, real-valued sampled signal.
///
/// Construct through `make_frame`, which enforces: non-empty, all samples
/// finite, fs > 0, n_bits >= 1.
struct SignalFrame {
  std::vector<double> samples;
  double fs = 0.0;  // Hz
  int n_bits = 0;   // bits per sample
};

SignalFrame make_frame(std::vector<double> samples, double fs, int n_bits);

/// Throws ValidationError when `frame` violates the SignalFrame invariants.
void validate(const SignalFrame& frame);

/// Critically sampled transforms need a periodic extension to stay orthogonal,
/// so periodization is the only mode offered.
enum class BoundaryMode { periodization };

struct WaveletConfig {
  int family_order = 4;  // Daubechies order: db4 has 8 taps
  int levels = 5;
  BoundaryMode boundary = BoundaryMode::periodization;
};

/// Supported Daubechies orders.
inline constexpr int kMinFamilyOrder = 1;
inline constexpr int kMaxFamilyOrder = 10;

/// Scaling (low-pass decomposition) filter of db<order>, 2*order taps,
/// normalized so the taps sum to sqrt(2).
std::span<const double> daubechies_lowpass(int order);

/// Deepest decomposition for which every level sees at least one full filter
/// support: floor(log2(length / (2*order - 1))).
int max_levels(std::size_t length, int family_order);

/// Length used by the transform: the next power of two >= length.
std::size_t padded_length(std::size_t length);

/// Wavelet-domain coefficients in [a_L | d_L | d_{L-1} | ... | d_1] order.
///
/// `band_offsets` has levels + 2 entries; band i spans
/// [band_offsets[i], band_offsets[i+1]). `signal_length` is the original,
/// unpadded frame length that the inverse crops back to.
struct CoefficientVector {
  std::vector<double> coeffs;
  std::vector<std::size_t> band_offsets;
  std::size_t signal_length = 0;
  double fs = 0.0;
  int n_bits = 0;
};

struct CompressionResult {
  CoefficientVector kept;  // zeroed entries set to exactly 0.0
  double kappa = 0.0;      // realized fraction of zeroed coefficients
  double delta = 0.0;      // magnitude threshold used
  std::size_t zeroed = 0;
};

CoefficientVector dwt_forward(const SignalFrame& frame, const WaveletConfig& cfg);
SignalFrame dwt_inverse(const CoefficientVector& coeffs, const WaveletConfig& cfg);

/// Number of coefficients to zero for a target ratio: ceil(kappa * n),
/// with a 1e-9 guard so that 0.3 * 10 zeroes 3 and not 4.
std::size_t zero_count(double kappa_target, std::size_t n);

/// Smallest threshold delta such that zeroing every |c| < delta zeroes at
/// least a fraction kappa_target of the coefficients.
///
/// kappa_target == 0 gives 0; kappa_target == 1 gives a value strictly above
/// max |c|. Ties at the threshold magnitude may make `apply_threshold`
/// zero more than requested; `compress` breaks ties by index instead.
double threshold_for_ratio(std::span<const double> coeffs, double kappa_target);
double threshold_for_ratio(const CoefficientVector& coeffs, double kappa_target);

/// Zeroes every coefficient with |c| < delta. Returns the realized ratio.
double apply_threshold(CoefficientVector& coeffs, double delta);

/// Indices of `coeffs` sorted by (|c|, index) ascending.
std::vector<std::size_t> magnitude_order(std::span<const double> coeffs);

/// Zeroes exactly zero_count(kappa, n) coefficients, smallest magnitudes
/// first and earlier indices first among equal magnitudes.
CompressionResult compress_coefficients(const CoefficientVector& coeffs, double kappa);

CompressionResult compress(const SignalFrame& frame, const WaveletConfig& cfg, double kappa);

/// Percentage root-mean-square difference, 100 * ||x - x_hat|| / ||x||.
double prd(std::span<const double> original, std::span<const double> reconstructed);
double prd(const SignalFrame& original, const SignalFrame& reconstructed);

}  // namespace fdcomp::codec
