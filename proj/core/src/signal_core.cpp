#include "gipulse/signal_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gipulse/errors.hpp"
#include "gipulse/fft.hpp"
#include "gipulse/rng.hpp"

namespace gipulse {

double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

std::vector<double> remove_mean(std::span<const double> v) {
    const double m = mean(v);
    std::vector<double> out(v.begin(), v.end());
    for (double& x : out) x -= m;
    return out;
}

TimeSeries autocorrelation(const TimeSeries& x) {
    require_valid(x, "autocorrelation");
    const std::size_t n = x.size();
    if (n < 2) throw InvalidInput("autocorrelation: need at least 2 samples");
    std::vector<double> r(n, 0.0);
    const double* s = x.samples.data();
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) acc += s[i] * s[i + k];
        r[k] = acc;
    }
    return {std::move(r), x.fs};
}

TimeSeries cross_correlation(const TimeSeries& x, const TimeSeries& y) {
    require_valid(x, "cross_correlation");
    require_valid(y, "cross_correlation");
    if (x.size() != y.size())
        throw InvalidInput("cross_correlation: length mismatch");
    if (x.fs != y.fs)
        throw InvalidInput("cross_correlation: sample-rate mismatch");
    const std::size_t n = x.size();
    std::vector<double> c(n, 0.0);
    const double* a = x.samples.data();
    const double* b = y.samples.data();
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) acc += a[i] * b[i + k];
        c[k] = acc;
    }
    return {std::move(c), x.fs};
}

std::vector<double> design_bandpass_fir(double fs, const FrequencyBand& band,
                                        std::size_t max_len) {
    if (!(fs > 0.0)) throw InvalidInput("design_bandpass_fir: fs must be > 0");
    require_valid_band(band, fs, "design_bandpass_fir");

    // Hamming transition width ~= 3.3/M in cycles/sample; target 0.2 Hz.
    constexpr double kTransitionHz = 0.2;
    std::size_t m = static_cast<std::size_t>(std::ceil(3.3 * fs / kTransitionHz));
    if (m % 2 == 0) ++m;
    if (max_len > 0 && m > max_len) {
        m = (max_len % 2 == 0) ? max_len - 1 : max_len;
    }
    if (m < 3) throw InvalidInput("design_bandpass_fir: signal too short for any filter");

    const double half = static_cast<double>(m - 1) / 2.0;
    const auto sinc_lp = [&](double fc, double k) {
        // ideal lowpass with cutoff fc, sample offset k from center
        const double t = k - half;
        if (t == 0.0) return 2.0 * fc / fs;
        const double arg = 2.0 * std::numbers::pi * fc / fs * t;
        return std::sin(arg) / (std::numbers::pi * t);
    };
    std::vector<double> h(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double w = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                                static_cast<double>(m - 1));
        h[k] = (sinc_lp(band.hi_hz, static_cast<double>(k)) -
                sinc_lp(band.lo_hz, static_cast<double>(k))) * w;
    }
    return h;
}

TimeSeries bandpass_fir(const TimeSeries& x, const FrequencyBand& band) {
    require_valid(x, "bandpass_fir");
    require_valid_band(band, x.fs, "bandpass_fir");
    const std::size_t n = x.size();
    if (n < 32) throw InvalidInput("bandpass_fir: signal shorter than minimum filter order");

    const std::vector<double> h = design_bandpass_fir(x.fs, band, n);
    const std::size_t m = h.size();
    const std::size_t g = (m - 1) / 2; // group delay, g <= (n-1)/2

    // Reflect (no edge repeat) by g samples on both sides, convolve, and
    // read the output aligned with the input so the filter is zero-lag.
    std::vector<double> ext(n + 2 * g);
    for (std::size_t i = 0; i < g; ++i) ext[i] = x.samples[g - i];
    for (std::size_t i = 0; i < n; ++i) ext[g + i] = x.samples[i];
    for (std::size_t i = 0; i < g; ++i) ext[g + n + i] = x.samples[n - 2 - i];

    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const double* src = ext.data() + i + 2 * g; // ext[i + 2g - k], k = 0..m-1
        for (std::size_t k = 0; k < m; ++k) acc += h[k] * src[-static_cast<std::ptrdiff_t>(k)];
        y[i] = acc;
    }
    return {std::move(y), x.fs};
}

PeakResult spectrum_peak(const TimeSeries& x, const FrequencyBand& band) {
    require_valid(x, "spectrum_peak");
    if (x.size() < 16) throw InvalidInput("spectrum_peak: need at least 16 samples");
    require_valid_band(band, x.fs, "spectrum_peak");

    std::vector<double> d = remove_mean(x.samples);
    bool all_zero = true;
    for (double v : d) {
        if (v != 0.0) { all_zero = false; break; }
    }
    if (all_zero) throw DegenerateSignal("spectrum_peak: signal has no variation");

    // Zero-pad to the next power of two giving <= 0.005 Hz bin spacing.
    constexpr double kMaxBinHz = 0.005;
    const std::size_t n_min = std::max<std::size_t>(
        d.size(), static_cast<std::size_t>(std::ceil(x.fs / kMaxBinHz)));
    const std::size_t n_pad = fft::next_pow2(n_min);

    const auto spec = fft::forward_real_padded(d, n_pad);
    const std::size_t n_half = n_pad / 2 + 1;
    Spectrum out;
    out.freqs_hz.resize(n_half);
    out.mags.resize(n_half);
    const double df = x.fs / static_cast<double>(n_pad);
    for (std::size_t i = 0; i < n_half; ++i) {
        out.freqs_hz[i] = df * static_cast<double>(i);
        out.mags[i] = std::abs(spec[i]);
    }

    double best_mag = -1.0;
    double best_freq = 0.0;
    for (std::size_t i = 0; i < n_half; ++i) {
        const double f = out.freqs_hz[i];
        if (f < band.lo_hz || f > band.hi_hz) continue;
        if (out.mags[i] > best_mag) {
            best_mag = out.mags[i];
            best_freq = f;
        }
    }
    if (best_mag < 0.0) throw InvalidInput("spectrum_peak: band contains no spectral bins");
    return {best_freq, std::move(out)};
}

double hr_from_peak(double f_max_hz) {
    if (!(f_max_hz > 0.0)) throw InvalidInput("hr_from_peak: frequency must be > 0");
    return 60.0 * f_max_hz;
}

double mae(std::span<const double> estimates, std::span<const double> truths) {
    if (estimates.empty()) throw InvalidInput("mae: empty input");
    if (estimates.size() != truths.size()) throw InvalidInput("mae: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i)
        acc += std::abs(estimates[i] - truths[i]);
    return acc / static_cast<double>(estimates.size());
}

TimeSeries add_awgn(const TimeSeries& x, double snr_db, std::uint64_t seed) {
    require_valid(x, "add_awgn");
    const double p = variance(x.samples); // mean-removed signal power
    if (p <= 0.0) throw DegenerateSignal("add_awgn: signal has zero power");
    const double noise_power = p / std::pow(10.0, snr_db / 10.0);
    const double sigma = std::sqrt(noise_power);
    const std::vector<double> noise = gaussian_vector(x.size(), seed);
    TimeSeries out = x;
    for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += sigma * noise[i];
    return out;
}

} // namespace gipulse
