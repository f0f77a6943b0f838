#include "gipulse/hr_extract.hpp"

#include <cmath>

#include "gipulse/errors.hpp"

namespace gipulse {

namespace {

bool is_constant(const std::vector<double>& v) {
    for (double x : v)
        if (x != v.front()) return false;
    return true;
}

} // namespace

ExtractResult extract_hr_from_bucket(const TimeSeries& bucket, const ExtractConfig& cfg) {
    require_valid(bucket, "extract_hr_from_bucket");
    if (bucket.duration_s() < 6.0)
        throw InvalidInput("extract_hr_from_bucket: need at least 6 seconds of signal");
    require_valid_band(cfg.band, bucket.fs, "extract_hr_from_bucket");
    if (is_constant(bucket.samples))
        throw DegenerateSignal("extract_hr_from_bucket: signal is constant");

    // (1) mean removal
    TimeSeries detrended{remove_mean(bucket.samples), bucket.fs};
    // (2) autocorrelation, nonnegative lags only
    TimeSeries acorr = autocorrelation(detrended);
    // (3) decompose the autocorrelation into K narrow-band modes
    VmdResult vmd = vmd_decompose(acorr, cfg.vmd);
    // (4) lowest in-band mode
    ImfSelection sel = select_imf(vmd, cfg.band);
    // (5) bandpass the selected mode
    TimeSeries filtered = bandpass_fir(sel.mode, cfg.band);
    // (6) cross-correlate the filtered mode with the detrended input
    TimeSeries xcorr = cross_correlation(filtered, detrended);
    // (7) spectral peak inside the prior band
    PeakResult peak = spectrum_peak(xcorr, cfg.band);
    // (8) Hr = 60 * f_max
    ExtractResult result;
    result.f_max_hz = peak.f_max_hz;
    result.hr_bpm = hr_from_peak(peak.f_max_hz);
    result.out_of_band = sel.out_of_band;
    if (cfg.keep_intermediates) {
        ExtractIntermediates inter;
        inter.detrended = std::move(detrended);
        inter.autocorr = std::move(acorr);
        inter.vmd = std::move(vmd);
        inter.selected_index = sel.index;
        inter.selected_imf = std::move(sel.mode);
        inter.filtered_imf = std::move(filtered);
        inter.cross_corr = std::move(xcorr);
        inter.spectrum = std::move(peak.spectrum);
        result.intermediates = std::move(inter);
    }
    return result;
}

ExtractResult extract_hr_from_frames(const FrameSequence& frames, const ExtractConfig& cfg,
                                     const RoiRect& roi) {
    if (frames.frame_count() == 0) throw InvalidInput("extract_hr_from_frames: no frames");
    if (!(frames.fs > 0.0)) throw InvalidInput("extract_hr_from_frames: fs must be > 0");
    if (roi.width <= 0 || roi.height <= 0)
        throw InvalidInput("extract_hr_from_frames: empty roi");
    if (roi.x < 0 || roi.y < 0 || roi.x + roi.width > frames.width ||
        roi.y + roi.height > frames.height)
        throw InvalidInput("extract_hr_from_frames: roi outside frame bounds");
    const std::size_t n = frames.frame_count();
    if (static_cast<double>(n) / frames.fs < 6.0)
        throw InvalidInput("extract_hr_from_frames: need at least 6 seconds of frames");
    require_valid_band(cfg.band, frames.fs, "extract_hr_from_frames");

    // spatial mean over the ROI forms the proxy rPPG signal
    std::vector<double> proxy(n, 0.0);
    const double inv_area = 1.0 / (static_cast<double>(roi.width) * roi.height);
    for (std::size_t f = 0; f < n; ++f) {
        const auto frame = frames.frame(f);
        double acc = 0.0;
        for (int y = roi.y; y < roi.y + roi.height; ++y)
            for (int x = roi.x; x < roi.x + roi.width; ++x)
                acc += frame[static_cast<std::size_t>(y) * frames.width + x];
        proxy[f] = acc * inv_area;
    }
    if (is_constant(proxy))
        throw DegenerateSignal("extract_hr_from_frames: roi signal is constant");

    TimeSeries detrended{remove_mean(proxy), frames.fs};
    TimeSeries filtered = bandpass_fir(detrended, cfg.band);
    PeakResult peak = spectrum_peak(filtered, cfg.band);

    ExtractResult result;
    result.f_max_hz = peak.f_max_hz;
    result.hr_bpm = hr_from_peak(peak.f_max_hz);
    result.out_of_band = false;
    if (cfg.keep_intermediates) {
        ExtractIntermediates inter;
        inter.detrended = std::move(detrended);
        inter.filtered_imf = std::move(filtered);
        inter.spectrum = std::move(peak.spectrum);
        result.intermediates = std::move(inter);
    }
    return result;
}

} // namespace gipulse
