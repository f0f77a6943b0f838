#ifndef GIPULSE_SIGNAL_CORE_HPP
#define GIPULSE_SIGNAL_CORE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "gipulse/time_series.hpp"

namespace gipulse {

/// One-sided raw autocorrelation, lags 0..N-1:
///   r[k] = sum_{n=0}^{N-1-k} x[n] * x[n+k]
/// No normalization and no mean removal; callers that need a zero-centered
/// input subtract the mean first. Output keeps the input sample rate so lag
/// k sits at k/fs seconds.
TimeSeries autocorrelation(const TimeSeries& x);

/// One-sided raw cross-correlation with the same lag convention:
///   c[k] = sum_{n=0}^{N-1-k} x[n] * y[n+k]
/// cross_correlation(x, x) equals autocorrelation(x) exactly.
TimeSeries cross_correlation(const TimeSeries& x, const TimeSeries& y);

/// Linear-phase windowed-sinc bandpass taps (Hamming window). Length is the
/// smallest odd M with a ~0.2 Hz transition band (M = ceil(3.3*fs/0.2)
/// rounded up to odd), clamped to max_len when 0 < max_len < M.
std::vector<double> design_bandpass_fir(double fs, const FrequencyBand& band,
                                        std::size_t max_len = 0);

/// Zero-lag bandpass: convolve with the designed taps after reflecting the
/// signal at both edges, then drop the (M-1)/2-sample group delay. Output
/// has the same length and is time-aligned with the input. The taps are
/// clamped to the signal length when the signal is shorter than the design.
TimeSeries bandpass_fir(const TimeSeries& x, const FrequencyBand& band);

struct PeakResult {
    double f_max_hz = 0.0;
    Spectrum spectrum; // full one-sided grid, 0..fs/2
};

/// Magnitude spectrum of the mean-removed signal on a zero-padded grid with
/// bin spacing <= 0.005 Hz, and the frequency of maximum magnitude inside
/// [band.lo, band.hi].
PeakResult spectrum_peak(const TimeSeries& x, const FrequencyBand& band);

/// Hr = 60 * f_max.
double hr_from_peak(double f_max_hz);

/// Mean absolute error (1/N) * sum |estimates[i] - truths[i]|.
double mae(std::span<const double> estimates, std::span<const double> truths);

/// x plus zero-mean white Gaussian noise with power var(x) / 10^(snr_db/10).
/// Signal power is measured on the mean-removed signal. The noise vector is
/// a pure function of (seed, length), independent of the samples.
TimeSeries add_awgn(const TimeSeries& x, double snr_db, std::uint64_t seed);

// Shared small helpers.
double mean(std::span<const double> v);
double variance(std::span<const double> v); // population variance about the mean
std::vector<double> remove_mean(std::span<const double> v);

} // namespace gipulse

#endif
