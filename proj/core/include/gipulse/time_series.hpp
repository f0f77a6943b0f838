#ifndef GIPULSE_TIME_SERIES_HPP
#define GIPULSE_TIME_SERIES_HPP

#include <cstddef>
#include <vector>

#include "gipulse/errors.hpp"

namespace gipulse {

/// Uniformly sampled real-valued signal. The universal currency of the
/// toolkit: bucket signals, rPPG waveforms, correlations and modes all
/// travel as TimeSeries.
struct TimeSeries {
    std::vector<double> samples;
    double fs = 0.0; // Hz

    TimeSeries() = default;
    TimeSeries(std::vector<double> s, double rate) : samples(std::move(s)), fs(rate) {}

    std::size_t size() const { return samples.size(); }
    double duration_s() const { return fs > 0.0 ? static_cast<double>(samples.size()) / fs : 0.0; }
};

/// Frequency interval in Hz, 0 < lo < hi. hi must stay below the Nyquist
/// rate of any signal the band is applied to.
struct FrequencyBand {
    double lo_hz = 0.7;
    double hi_hz = 4.0;
};

/// One-sided magnitude spectrum on an ascending grid from 0 to fs/2.
struct Spectrum {
    std::vector<double> freqs_hz;
    std::vector<double> mags;
};

inline void require_valid(const TimeSeries& x, const char* what) {
    if (x.samples.empty()) throw InvalidInput(std::string(what) + ": empty signal");
    if (!(x.fs > 0.0)) throw InvalidInput(std::string(what) + ": fs must be > 0");
}

inline void require_valid_band(const FrequencyBand& b, double fs, const char* what) {
    if (!(b.lo_hz > 0.0) || !(b.lo_hz < b.hi_hz))
        throw InvalidInput(std::string(what) + ": band must satisfy 0 < lo < hi");
    if (!(b.hi_hz < fs / 2.0))
        throw InvalidInput(std::string(what) + ": band.hi must be below Nyquist (fs/2)");
}

} // namespace gipulse

#endif
