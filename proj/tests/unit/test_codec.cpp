#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "fdcomp/errors.hpp"
#include "fdcomp/wavelet_codec.hpp"
#include "oracles.hpp"

using namespace fdcomp;
using namespace fdcomp::codec;

namespace {

SignalFrame random_frame(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = normal(rng);
  return make_frame(std::move(x), 2000.0, 12);
}

double relative_l2(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += a[i] * a[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_SUITE("codec") {
  TEST_CASE("db4 two-level periodized transform matches PyWavelets") {
    const auto frame = make_frame(testing::pywt_probe_signal(), 1.0, 12);
    const auto c = dwt_forward(frame, {4, 2, BoundaryMode::periodization});
    REQUIRE(c.coeffs.size() == 32);
    for (std::size_t i = 0; i < 32; ++i) CHECK(c.coeffs[i] == doctest::Approx(testing::kPywtDb4Level2[i]).epsilon(1e-12));
    CHECK(c.band_offsets == std::vector<std::size_t>{0, 8, 16, 32});
  }

  TEST_CASE("db2 three-level periodized transform matches PyWavelets") {
    const auto frame = make_frame(testing::pywt_probe_signal(), 1.0, 12);
    const auto c = dwt_forward(frame, {2, 3, BoundaryMode::periodization});
    for (std::size_t i = 0; i < 32; ++i) {
      CHECK(std::abs(c.coeffs[i] - testing::kPywtDb2Level3[i]) <= 1e-12 * 100.0);
    }
    CHECK(c.band_offsets == std::vector<std::size_t>{0, 4, 8, 16, 32});
  }

  TEST_CASE("scaling filters are orthonormal with taps summing to sqrt 2") {
    for (int order = kMinFamilyOrder; order <= kMaxFamilyOrder; ++order) {
      const auto lo = daubechies_lowpass(order);
      REQUIRE(lo.size() == static_cast<std::size_t>(2 * order));
      CHECK(std::accumulate(lo.begin(), lo.end(), 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
      for (std::size_t shift = 0; shift < lo.size(); shift += 2) {
        double dot = 0.0;
        for (std::size_t j = 0; j + shift < lo.size(); ++j) dot += lo[j] * lo[j + shift];
        CHECK(dot == doctest::Approx(shift == 0 ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
      }
    }
    CHECK_THROWS_AS(daubechies_lowpass(0), ValidationError);
    CHECK_THROWS_AS(daubechies_lowpass(11), ValidationError);
  }

  TEST_CASE("roundtrip restores frames of arbitrary length") {
    for (std::size_t n : {64u, 100u, 1000u, 2047u, 4096u}) {
      for (int order : {1, 2, 4, 7, 10}) {
        const auto frame = random_frame(n, n * 31 + static_cast<std::size_t>(order));
        const int levels = std::max(1, max_levels(padded_length(n), order));
        const WaveletConfig cfg{order, levels, BoundaryMode::periodization};
        const auto coeffs = dwt_forward(frame, cfg);
        CHECK(coeffs.coeffs.size() == padded_length(n));
        const auto back = dwt_inverse(coeffs, cfg);
        REQUIRE(back.samples.size() == n);
        CHECK(relative_l2(frame.samples, back.samples) <= 1e-12);
      }
    }
  }

  TEST_CASE("power-of-two frames preserve energy") {
    const auto frame = random_frame(1024, 7);
    const auto c = dwt_forward(frame, {4, 5, BoundaryMode::periodization});
    double ex = 0.0;
    double ec = 0.0;
    for (double v : frame.samples) ex += v * v;
    for (double v : c.coeffs) ec += v * v;
    CHECK(ec == doctest::Approx(ex).epsilon(1e-12));
  }

  TEST_CASE("decomposition depth is bounded by the filter support") {
    CHECK(max_levels(32, 4) == 2);
    CHECK(max_levels(1024, 4) == 7);
    CHECK(max_levels(5, 4) == 0);
    const auto frame = random_frame(32, 1);
    CHECK_THROWS_AS(dwt_forward(frame, {4, 3, BoundaryMode::periodization}), ConfigError);
    CHECK_THROWS_AS(dwt_forward(frame, {4, 0, BoundaryMode::periodization}), ValidationError);
  }

  TEST_CASE("frames reject empty, non-finite and invalid metadata") {
    CHECK_THROWS_AS(make_frame({}, 1.0, 12), ValidationError);
    CHECK_THROWS_AS(make_frame({1.0, std::numeric_limits<double>::quiet_NaN()}, 1.0, 12), ValidationError);
    CHECK_THROWS_AS(make_frame({1.0}, 0.0, 12), ValidationError);
    CHECK_THROWS_AS(make_frame({1.0}, 1.0, 0), ValidationError);
  }

  TEST_CASE("inverse rejects a mismatched layout") {
    const auto frame = random_frame(64, 2);
    auto c = dwt_forward(frame, {2, 3, BoundaryMode::periodization});
    CHECK_THROWS_AS(dwt_inverse(c, {2, 2, BoundaryMode::periodization}), ShapeError);
    c.coeffs.pop_back();
    CHECK_THROWS_AS(dwt_inverse(c, {2, 3, BoundaryMode::periodization}), ShapeError);
  }

  TEST_CASE("zero_count rounds up with a guard against representation error") {
    CHECK(zero_count(0.3, 10) == 3);
    CHECK(zero_count(0.0, 10) == 0);
    CHECK(zero_count(1.0, 10) == 10);
    CHECK(zero_count(0.25, 10) == 3);
    CHECK(zero_count(0.1, 1000) == 100);
  }

  TEST_CASE("threshold and compression realize the requested ratio") {
    const auto frame = random_frame(512, 3);
    const WaveletConfig cfg{4, 4, BoundaryMode::periodization};
    const auto coeffs = dwt_forward(frame, cfg);
    CHECK(threshold_for_ratio(coeffs, 0.0) == 0.0);
    double max_abs = 0.0;
    for (double v : coeffs.coeffs) max_abs = std::max(max_abs, std::abs(v));
    CHECK(threshold_for_ratio(coeffs, 1.0) > max_abs);

    for (double kappa : {0.1, 0.37, 0.5, 0.9}) {
      auto copy = coeffs;
      const double realized = apply_threshold(copy, threshold_for_ratio(coeffs, kappa));
      CHECK(realized >= kappa);
      const auto result = compress_coefficients(coeffs, kappa);
      CHECK(result.zeroed == zero_count(kappa, coeffs.coeffs.size()));
      CHECK(result.kappa == doctest::Approx(static_cast<double>(result.zeroed) / 512.0));
      std::size_t zeros = 0;
      for (double v : result.kept.coeffs) zeros += v == 0.0 ? 1 : 0;
      CHECK(zeros == result.zeroed);
    }
    CHECK_THROWS_AS(compress(frame, cfg, 1.5), ValidationError);
  }

  TEST_CASE("equal magnitudes are zeroed in index order") {
    CoefficientVector c;
    c.coeffs = {1.0, -1.0, 1.0, 2.0};
    c.band_offsets = {0, 2, 4};
    c.signal_length = 4;
    c.fs = 1.0;
    c.n_bits = 8;
    const auto r = compress_coefficients(c, 0.5);
    CHECK(r.kept.coeffs == std::vector<double>{0.0, 0.0, 1.0, 2.0});
    CHECK(magnitude_order(c.coeffs) == std::vector<std::size_t>{0, 1, 2, 3});
  }

  TEST_CASE("PRD boundary values are exact") {
    const auto frame = random_frame(300, 4);
    CHECK(prd(frame, frame) == 0.0);
    const std::vector<double> zeros(300, 0.0);
    CHECK(prd(frame.samples, zeros) == 100.0);
    CHECK_THROWS_AS(prd(zeros, frame.samples), UndefinedMetricError);
    CHECK_THROWS_AS(prd(frame.samples, std::vector<double>(299, 0.0)), ShapeError);
  }

  TEST_CASE("PRD does not decrease as more coefficients are dropped") {
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
      const auto frame = random_frame(1000, seed);
      const WaveletConfig cfg{4, 5, BoundaryMode::periodization};
      double last = -1.0;
      for (int i = 0; i <= 100; ++i) {
        const double kappa = i / 100.0;
        const auto r = compress(frame, cfg, kappa);
        const double d = prd(frame, dwt_inverse(r.kept, cfg));
        CHECK(d >= last);
        last = d;
      }
      CHECK(last == 100.0);
    }
  }
}
