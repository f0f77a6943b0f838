#ifndef GIPULSE_GI_HPP
#define GIPULSE_GI_HPP

#include <cstdint>

#include "gipulse/synth.hpp"
#include "gipulse/time_series.hpp"

namespace gipulse {

/// Paired bucket measurement: `bucket` is the object arm (total reflected
/// intensity per pattern), `reference` the per-pattern total illumination.
struct BucketRecord {
    TimeSeries bucket;
    TimeSeries reference;
};

/// Single-pixel measurement of a frame sequence under speckle illumination,
/// one pattern per frame:
///   bucket[t]    = (sum_xy pattern[t] * frame[t]) * (1 + eps_t)
///   reference[t] = sum_xy pattern[t]
/// with eps_t ~ N(0, detector_noise_sigma^2). Detector noise multiplies the
/// measured intensity; there is no additive floor.
BucketRecord bucket_measure(const SpeckleSequence& speckles, const FrameSequence& frames,
                            double detector_noise_sigma = 0.0, std::uint64_t seed = 0);

/// Reconstruction; values may be negative.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data;
};

enum class DgiFormula {
    Canonical, // G = <I*B> - (<B>/<B'>) * <I*B'>  (default; nulls constant objects)
    Literal,   // G = <I*B> * (1 - <B>/<B'>)       (scalar-weighted correlation image)
};

/// Differential ghost imaging over the recorded patterns; <.> is the mean
/// over patterns. Assumes a static scene.
Image dgi_reconstruct(const BucketRecord& rec, const SpeckleSequence& speckles,
                      DgiFormula formula = DgiFormula::Canonical);

/// bucket[t] / reference[t]; removes per-pattern speckle-energy fluctuation
/// before heart-rate extraction.
TimeSeries normalize_bucket(const BucketRecord& rec);

} // namespace gipulse

#endif
