#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gipulse/eval.hpp"
#include "gipulse/gi.hpp"
#include "gipulse/hr_extract.hpp"
#include "gipulse/signal_core.hpp"
#include "gipulse/synth.hpp"
#include "gipulse/vmd.hpp"

using namespace gipulse;

namespace {

TimeSeries make_tone(std::size_t n, double freq_hz, double fs) {
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = std::sin(2.0 * std::numbers::pi * freq_hz * i / fs);
    return {std::move(s), fs};
}

} // namespace

static void BM_Autocorrelation(benchmark::State& state) {
    auto x = make_tone(static_cast<std::size_t>(state.range(0)), 1.25, 30.0);
    for (auto _ : state) benchmark::DoNotOptimize(autocorrelation(x));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Autocorrelation)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

static void BM_BandpassFir(benchmark::State& state) {
    auto x = make_tone(static_cast<std::size_t>(state.range(0)), 1.25, 30.0);
    const FrequencyBand band{0.7, 4.0};
    for (auto _ : state) benchmark::DoNotOptimize(bandpass_fir(x, band));
}
BENCHMARK(BM_BandpassFir)->RangeMultiplier(2)->Range(256, 4096);

static void BM_SpectrumPeak(benchmark::State& state) {
    auto x = make_tone(static_cast<std::size_t>(state.range(0)), 1.25, 30.0);
    const FrequencyBand band{0.7, 4.0};
    for (auto _ : state) benchmark::DoNotOptimize(spectrum_peak(x, band));
}
BENCHMARK(BM_SpectrumPeak)->RangeMultiplier(4)->Range(256, 16384);

static void BM_VmdDecompose(benchmark::State& state) {
    auto x = make_tone(static_cast<std::size_t>(state.range(0)), 1.25, 30.0);
    VmdConfig cfg;
    cfg.K = 3;
    for (auto _ : state) benchmark::DoNotOptimize(vmd_decompose(x, cfg));
}
BENCHMARK(BM_VmdDecompose)->Arg(360)->Arg(1800)->Arg(3000);

static void BM_ExtractHrFromBucket(benchmark::State& state) {
    auto clean = make_tone(static_cast<std::size_t>(state.range(0)), 1.25, 30.0);
    auto noisy = add_awgn(clean, -10.0, 7);
    ExtractConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(extract_hr_from_bucket(noisy, cfg));
}
BENCHMARK(BM_ExtractHrFromBucket)->Arg(360)->Arg(1800);

static void BM_DgiReconstruct(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SpeckleConfig sp;
    sp.n_patterns = n;
    sp.width = 16;
    sp.height = 16;
    sp.seed = 3;
    auto speckles = gen_speckles(sp);
    FrameSequence frames;
    frames.width = 16;
    frames.height = 16;
    frames.fs = 30.0;
    frames.data.assign(16 * 16 * static_cast<std::size_t>(n), 1.0);
    auto rec = bucket_measure(speckles, frames, 0.0, 0);
    for (auto _ : state) benchmark::DoNotOptimize(dgi_reconstruct(rec, speckles));
}
BENCHMARK(BM_DgiReconstruct)->Arg(500)->Arg(2000)->Arg(5000);

static void BM_RunTrial(benchmark::State& state) {
    ExtractConfig ecfg;
    RecipeConfig recipe;
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trial(75.0, -20.0, seed++, ecfg, recipe));
}
BENCHMARK(BM_RunTrial);

BENCHMARK_MAIN();
