#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gipulse/errors.hpp"
#include "gipulse/vmd.hpp"
#include "test_util.hpp"

using namespace gipulse;
using testutil::sine;

namespace {

double rel_l2_interior(const std::vector<double>& got, const std::vector<double>& want) {
    // exclude a 5% taper at each edge
    const std::size_t n = want.size();
    const std::size_t lo = n / 20, hi = n - n / 20;
    double num = 0.0, den = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        num += (got[i] - want[i]) * (got[i] - want[i]);
        den += want[i] * want[i];
    }
    return std::sqrt(num / den);
}

} // namespace

TEST_CASE("vmd_decompose recovers a single tone") {
    auto x = sine(1.2, 30.0, 20.0);
    VmdConfig cfg;
    cfg.K = 1;
    cfg.alpha = 2000.0;
    auto res = vmd_decompose(x, cfg);
    REQUIRE(res.modes.size() == 1);
    CHECK(std::abs(res.center_freqs_hz[0] - 1.2) <= 0.05);
    CHECK(rel_l2_interior(res.modes[0].samples, x.samples) <= 0.05);
}

TEST_CASE("vmd_decompose separates two tones") {
    const double fs = 50.0;
    auto a = sine(1.0, fs, 20.0);
    auto b = sine(10.0, fs, 20.0);
    std::vector<double> mix(a.size());
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a.samples[i] + b.samples[i];
    VmdConfig cfg;
    cfg.K = 2;
    auto res = vmd_decompose(TimeSeries{mix, fs}, cfg);
    REQUIRE(res.modes.size() == 2);
    // ascending order is part of the contract
    CHECK(res.center_freqs_hz[0] <= res.center_freqs_hz[1]);
    CHECK(std::abs(res.center_freqs_hz[0] - 1.0) <= 0.1);
    CHECK(std::abs(res.center_freqs_hz[1] - 10.0) <= 0.1);
}

TEST_CASE("vmd_decompose structural contract for K=3") {
    std::mt19937_64 eng(8);
    std::normal_distribution<double> gauss;
    std::vector<double> v(400);
    for (auto& s : v) s = gauss(eng);
    TimeSeries x{v, 30.0};
    VmdConfig cfg;
    cfg.K = 3;
    auto res = vmd_decompose(x, cfg);
    REQUIRE(res.modes.size() == 3);
    CHECK(res.center_freqs_hz.size() == 3);
    for (const auto& m : res.modes) {
        CHECK(m.size() == x.size());
        CHECK(m.fs == x.fs);
    }
    for (double f : res.center_freqs_hz) {
        CHECK(f >= 0.0);
        CHECK(f <= 15.0);
    }
    CHECK(std::isfinite(res.final_increment));
    if (res.converged) CHECK(res.final_increment < cfg.tol);
}

TEST_CASE("vmd_decompose reconstructs the input when tau > 0") {
    const double fs = 50.0;
    auto a = sine(1.0, fs, 20.0);
    auto b = sine(10.0, fs, 20.0);
    std::vector<double> mix(a.size());
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a.samples[i] + b.samples[i];
    VmdConfig cfg;
    cfg.K = 2;
    cfg.tau = 0.1;
    auto res = vmd_decompose(TimeSeries{mix, fs}, cfg);
    CHECK(res.converged);
    std::vector<double> sum(mix.size(), 0.0);
    for (const auto& m : res.modes)
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += m.samples[i];
    CHECK(rel_l2_interior(sum, mix) <= 0.05);
}

TEST_CASE("vmd_decompose is deterministic, including seeded-random init") {
    auto x = sine(2.0, 40.0, 10.0);
    for (auto init : {VmdInit::Uniform, VmdInit::Zeros, VmdInit::SeededRandom}) {
        VmdConfig cfg;
        cfg.K = 2;
        cfg.init = init;
        cfg.init_seed = 77;
        auto r1 = vmd_decompose(x, cfg);
        auto r2 = vmd_decompose(x, cfg);
        CHECK(r1.iterations == r2.iterations);
        CHECK(r1.center_freqs_hz == r2.center_freqs_hz);
        for (std::size_t k = 0; k < r1.modes.size(); ++k)
            CHECK(r1.modes[k].samples == r2.modes[k].samples);
    }
}

TEST_CASE("vmd_decompose validates input") {
    VmdConfig cfg;
    CHECK_THROWS_AS(vmd_decompose(TimeSeries{std::vector<double>(16, 1.0), 10.0}, cfg),
                    InvalidInput);
    auto x = sine(1.0, 30.0, 4.0); // 120 samples
    cfg.K = 16;                    // > len/8
    CHECK_THROWS_AS(vmd_decompose(x, cfg), InvalidInput);
    cfg.K = 0;
    CHECK_THROWS_AS(vmd_decompose(x, cfg), InvalidInput);
    cfg.K = 2;
    cfg.alpha = 0.0;
    CHECK_THROWS_AS(vmd_decompose(x, cfg), InvalidInput);
}

TEST_CASE("select_imf picks lowest center frequency inside the band") {
    VmdResult res;
    const FrequencyBand band{0.7, 4.0};
    const auto mk = [&](std::vector<double> freqs) {
        res.modes.clear();
        res.center_freqs_hz = freqs;
        for (std::size_t i = 0; i < freqs.size(); ++i)
            res.modes.push_back(TimeSeries{std::vector<double>(64, static_cast<double>(i)), 30.0});
    };

    mk({0.9, 5.0, 11.0});
    auto sel = select_imf(res, band);
    CHECK(sel.index == 0);
    CHECK_FALSE(sel.out_of_band);

    mk({0.3, 1.2, 6.0});
    sel = select_imf(res, band);
    CHECK(sel.index == 1);
    CHECK_FALSE(sel.out_of_band);

    mk({9.0, 12.0});
    sel = select_imf(res, band);
    CHECK(sel.index == 0);
    CHECK(sel.out_of_band);

    res.modes.clear();
    res.center_freqs_hz.clear();
    CHECK_THROWS_AS(select_imf(res, band), InvalidInput);
}
