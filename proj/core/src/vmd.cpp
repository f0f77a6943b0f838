#include "gipulse/vmd.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "gipulse/errors.hpp"
#include "gipulse/fft.hpp"

namespace gipulse {

namespace {

void require_valid_cfg(const VmdConfig& cfg) {
    if (cfg.K < 1) throw InvalidInput("vmd_decompose: K must be >= 1");
    if (!(cfg.alpha > 0.0)) throw InvalidInput("vmd_decompose: alpha must be > 0");
    if (cfg.tau < 0.0) throw InvalidInput("vmd_decompose: tau must be >= 0");
    if (!(cfg.tol > 0.0)) throw InvalidInput("vmd_decompose: tol must be > 0");
    if (cfg.max_iter < 1) throw InvalidInput("vmd_decompose: max_iter must be >= 1");
}

std::vector<double> initial_centers(const VmdConfig& cfg) {
    // normalized frequency units, [0, 0.5)
    std::vector<double> w(cfg.K, 0.0);
    switch (cfg.init) {
        case VmdInit::Uniform:
            for (int k = 0; k < cfg.K; ++k)
                w[k] = 0.5 / static_cast<double>(cfg.K) * static_cast<double>(k);
            break;
        case VmdInit::Zeros:
            break;
        case VmdInit::SeededRandom: {
            std::mt19937_64 eng(cfg.init_seed);
            std::uniform_real_distribution<double> uni(0.0, 0.5);
            for (auto& v : w) v = uni(eng);
            std::sort(w.begin(), w.end());
            break;
        }
    }
    return w;
}

} // namespace

VmdResult vmd_decompose(const TimeSeries& x, const VmdConfig& cfg) {
    require_valid(x, "vmd_decompose");
    require_valid_cfg(cfg);
    const std::size_t n = x.size();
    if (n < 32) throw InvalidInput("vmd_decompose: need at least 32 samples");
    if (static_cast<std::size_t>(cfg.K) > n / 8)
        throw InvalidInput("vmd_decompose: K too large for signal length");

    const int K = cfg.K;

    // Mirror-extend by half the length on each side (edge samples repeated)
    // to suppress boundary artifacts; crop back after reconstruction.
    const std::size_t half = n / 2;
    const std::size_t t_len = n + 2 * half;
    std::vector<std::complex<double>> extended(t_len);
    for (std::size_t i = 0; i < half; ++i) extended[i] = x.samples[half - 1 - i];
    for (std::size_t i = 0; i < n; ++i) extended[half + i] = x.samples[i];
    for (std::size_t i = 0; i < half; ++i) extended[half + n + i] = x.samples[n - 1 - i];

    const auto f_full = fft::forward(extended);
    const std::size_t n_half = t_len / 2 + 1; // nonnegative-frequency bins
    std::vector<std::complex<double>> f_hat(f_full.begin(), f_full.begin() + n_half);

    std::vector<double> grid(n_half); // normalized frequency of each bin
    for (std::size_t j = 0; j < n_half; ++j)
        grid[j] = static_cast<double>(j) / static_cast<double>(t_len);

    std::vector<double> omega = initial_centers(cfg);
    std::vector<std::vector<std::complex<double>>> u(
        K, std::vector<std::complex<double>>(n_half, {0.0, 0.0}));
    std::vector<std::complex<double>> lambda(n_half, {0.0, 0.0});
    std::vector<std::complex<double>> total(n_half, {0.0, 0.0}); // sum of all modes

    int iterations = 0;
    bool converged = false;
    double increment = 0.0;
    constexpr double kEnergyFloor = 1e-30;

    for (int it = 0; it < cfg.max_iter; ++it) {
        increment = 0.0;
        for (int k = 0; k < K; ++k) {
            auto& uk = u[k];
            const double wk = omega[k];
            double delta_sq = 0.0, old_sq = 0.0;
            double energy = 0.0, centroid = 0.0;
            for (std::size_t j = 0; j < n_half; ++j) {
                const std::complex<double> others = total[j] - uk[j];
                const double dw = grid[j] - wk;
                const std::complex<double> next =
                    (f_hat[j] - others + 0.5 * lambda[j]) / (1.0 + 2.0 * cfg.alpha * dw * dw);
                old_sq += std::norm(uk[j]);
                delta_sq += std::norm(next - uk[j]);
                total[j] += next - uk[j];
                uk[j] = next;
                const double e = std::norm(next);
                energy += e;
                centroid += grid[j] * e;
            }
            increment += delta_sq / (old_sq + kEnergyFloor);
            if (energy > kEnergyFloor) omega[k] = centroid / energy;
        }
        if (cfg.tau > 0.0)
            for (std::size_t j = 0; j < n_half; ++j)
                lambda[j] += cfg.tau * (f_hat[j] - total[j]);
        iterations = it + 1;
        if (increment < cfg.tol) {
            converged = true;
            break;
        }
    }

    // Hermitian-extend each mode's nonnegative half and return to the time
    // domain; crop the mirror padding.
    std::vector<std::size_t> order(K);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return omega[a] < omega[b]; });

    VmdResult result;
    result.iterations = iterations;
    result.converged = converged;
    result.final_increment = increment;
    result.modes.reserve(K);
    result.center_freqs_hz.reserve(K);
    for (std::size_t idx : order) {
        std::vector<std::complex<double>> full(t_len, {0.0, 0.0});
        for (std::size_t j = 0; j < n_half; ++j) full[j] = u[idx][j];
        for (std::size_t j = 1; j <= t_len - n_half; ++j) full[t_len - j] = std::conj(u[idx][j]);
        const auto mode_time = fft::inverse(full);
        std::vector<double> mode(n);
        for (std::size_t i = 0; i < n; ++i) mode[i] = mode_time[half + i].real();
        result.modes.emplace_back(std::move(mode), x.fs);
        result.center_freqs_hz.push_back(std::clamp(omega[idx], 0.0, 0.5) * x.fs);
    }
    return result;
}

ImfSelection select_imf(const VmdResult& result, const FrequencyBand& band) {
    if (result.modes.empty()) throw InvalidInput("select_imf: empty decomposition");
    if (result.center_freqs_hz.size() != result.modes.size())
        throw InvalidInput("select_imf: malformed decomposition");

    std::size_t best = result.modes.size();
    for (std::size_t i = 0; i < result.center_freqs_hz.size(); ++i) {
        const double f = result.center_freqs_hz[i];
        if (f < band.lo_hz || f > band.hi_hz) continue;
        if (best == result.modes.size() || f < result.center_freqs_hz[best]) best = i;
    }
    if (best != result.modes.size()) return {best, result.modes[best], false};

    const auto it = std::min_element(result.center_freqs_hz.begin(), result.center_freqs_hz.end());
    const std::size_t idx = static_cast<std::size_t>(it - result.center_freqs_hz.begin());
    return {idx, result.modes[idx], true};
}

} // namespace gipulse
