#ifndef GIPULSE_SYNTH_HPP
#define GIPULSE_SYNTH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gipulse/time_series.hpp"

namespace gipulse {

/// Synthetic rPPG waveform: a fundamental at hr_bpm/60 Hz plus optional
/// decaying harmonics, peak-normalized to amplitude 1, with optional AWGN.
struct RppgConfig {
    double hr_bpm = 75.0;   // must lie in [42, 240] (0.7..4 Hz fundamental)
    double duration_s = 12.0;
    double fs = 30.0;       // Hz, must exceed 8
    int n_harmonics = 0;    // extra partials above the fundamental
    double harmonic_decay = 0.5;            // per-harmonic amplitude ratio, (0,1]
    std::optional<double> noise_snr_db{};   // nullopt = clean
    std::uint64_t seed = 0;
};

TimeSeries gen_rppg_waveform(const RppgConfig& cfg);

/// Illumination profile I(t) for the scene generator.
struct IllumProfile {
    enum class Kind { Constant, Ramp, Sinusoid };
    Kind kind = Kind::Constant;
    double level = 1.0;      // Constant: I(t) = level
    double ramp_start = 1.0; // Ramp: linear level from ramp_start to ramp_end
    double ramp_end = 1.0;
    double sin_mean = 1.0;   // Sinusoid: sin_mean + sin_amp*sin(2*pi*sin_freq_hz*t)
    double sin_amp = 0.0;
    double sin_freq_hz = 0.0;

    double at(double t, double duration_s) const;
};

/// Pulsing skin patch parameters: frame[x,y](t) =
///   I(t) * (specular + diffuse*(1 + pulse_depth*rppg(t))) + pixel noise,
/// clamped at zero.
struct SceneConfig {
    int width = 32;
    int height = 32;
    double base_diffuse = 1.0;   // v_d, > 0
    double pulse_depth = 0.03;   // fractional diffuse modulation, [0, 0.2]
    double specular_level = 0.1; // v_s, constant, >= 0
    IllumProfile illum{};
    double pixel_noise_sigma = 0.0; // per pixel per frame, >= 0
    std::uint64_t seed = 0;
};

/// Ordered stack of same-shape nonnegative images at a fixed frame rate.
/// Data is frame-major, row-major within a frame.
struct FrameSequence {
    int width = 0;
    int height = 0;
    double fs = 0.0;
    std::vector<double> data;

    std::size_t frame_count() const {
        const std::size_t px = static_cast<std::size_t>(width) * height;
        return px ? data.size() / px : 0;
    }
    std::span<const double> frame(std::size_t i) const {
        const std::size_t px = static_cast<std::size_t>(width) * height;
        return {data.data() + i * px, px};
    }
    std::span<double> frame(std::size_t i) {
        const std::size_t px = static_cast<std::size_t>(width) * height;
        return {data.data() + i * px, px};
    }
};

FrameSequence gen_skin_frames(const SceneConfig& scene, const TimeSeries& rppg);

enum class SpeckleKind { Binary, Uniform, GaussianCorrelated };

struct SpeckleConfig {
    int n_patterns = 1000;
    int width = 32;
    int height = 32;
    SpeckleKind kind = SpeckleKind::Binary;
    double grain_px = 2.0; // correlation length for GaussianCorrelated
    std::uint64_t seed = 0;
};

/// Random illumination patterns, one per measurement instant. Same storage
/// layout as FrameSequence; patterns have no time axis of their own.
struct SpeckleSequence {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    std::size_t pattern_count() const {
        const std::size_t px = static_cast<std::size_t>(width) * height;
        return px ? data.size() / px : 0;
    }
    std::span<const double> pattern(std::size_t i) const {
        const std::size_t px = static_cast<std::size_t>(width) * height;
        return {data.data() + i * px, px};
    }
};

/// Deterministic per seed. Binary patterns that come out all-zero are
/// redrawn so every pattern has nonzero total intensity.
SpeckleSequence gen_speckles(const SpeckleConfig& cfg);

} // namespace gipulse

#endif
