#ifndef GIPULSE_HR_EXTRACT_HPP
#define GIPULSE_HR_EXTRACT_HPP

#include <optional>

#include "gipulse/signal_core.hpp"
#include "gipulse/synth.hpp"
#include "gipulse/time_series.hpp"
#include "gipulse/vmd.hpp"

namespace gipulse {

struct ExtractConfig {
    FrequencyBand band{0.7, 4.0}; // physiological prior
    VmdConfig vmd{};              // vmd.K is the pipeline's mode count
    bool normalize_by_reference = true; // GI chain: divide bucket by reference arm
    bool keep_intermediates = false;
};

/// Everything the pipeline produced along the way, stage by stage.
struct ExtractIntermediates {
    TimeSeries detrended;     // mean-removed input
    TimeSeries autocorr;      // lags 0..N-1
    VmdResult vmd;
    std::size_t selected_index = 0;
    TimeSeries selected_imf;
    TimeSeries filtered_imf;
    TimeSeries cross_corr;    // filtered imf against detrended input
    Spectrum spectrum;        // spectrum of the cross-correlation
};

struct ExtractResult {
    double hr_bpm = 0.0;
    double f_max_hz = 0.0;
    bool out_of_band = false;
    std::optional<ExtractIntermediates> intermediates{};
};

/// Heart rate straight from a bucket signal, no image formation:
/// mean removal -> autocorrelation (first half) -> VMD -> lowest in-band
/// mode -> bandpass -> cross-correlation with the detrended input ->
/// spectral peak -> Hr = 60 * f_max.
/// Requires at least 6 seconds of signal.
ExtractResult extract_hr_from_bucket(const TimeSeries& bucket, const ExtractConfig& cfg);

struct RoiRect {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;
};

/// Frame-based path: spatial mean over the ROI forms a proxy rPPG signal,
/// then mean removal -> bandpass -> spectral peak -> Hr. No VMD stage.
ExtractResult extract_hr_from_frames(const FrameSequence& frames, const ExtractConfig& cfg,
                                     const RoiRect& roi);

} // namespace gipulse

#endif
