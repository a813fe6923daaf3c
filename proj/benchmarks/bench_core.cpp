#include <benchmark/benchmark.h>

#include "fdcomp/distortion_model.hpp"
#include "fdcomp/fading.hpp"
#include "fdcomp/harness/signals.hpp"
#include "fdcomp/optimizer.hpp"
#include "fdcomp/wavelet_codec.hpp"

using namespace fdcomp;

static void BM_ClosedForm(benchmark::State& state) {
  opt::ObjectiveParams params;
  double h = 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(opt::solve_closed_form(h, params));
    h = h < 1.0 ? h * 1.01 : 1e-4;
  }
}
BENCHMARK(BM_ClosedForm);

static void BM_ExhaustiveSearch(benchmark::State& state) {
  opt::ObjectiveParams params;
  const auto grid = opt::SearchGrid::uniform(1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(opt::exhaustive_search(1e-3, params, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExhaustiveSearch)->Arg(1000)->Arg(10000);

static void BM_DwtRoundtrip(benchmark::State& state) {
  const auto frame = harness::synth_eeg(2000.0, static_cast<double>(state.range(0)) / 2000.0, 1);
  const codec::WaveletConfig cfg;
  for (auto _ : state) {
    const auto c = codec::dwt_forward(frame, cfg);
    benchmark::DoNotOptimize(codec::dwt_inverse(c, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DwtRoundtrip)->Arg(4096)->Arg(65536);

static void BM_RateDistortionSweep(benchmark::State& state) {
  const auto frame = harness::synth_eeg(2000.0, 32.768, 1);
  const auto grid = distortion::linear_grid(0.1, 0.9, 20);
  for (auto _ : state) benchmark::DoNotOptimize(distortion::sweep_rate_distortion(frame, {}, grid));
}
BENCHMARK(BM_RateDistortionSweep)->Unit(benchmark::kMillisecond);

static void BM_FadingTrace(benchmark::State& state) {
  channel::FadingConfig cfg;
  cfg.length = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(channel::generate_fading_trace(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FadingTrace)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
