#include "gipulse/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gipulse/errors.hpp"
#include "gipulse/rng.hpp"
#include "gipulse/signal_core.hpp"

namespace gipulse {

double IllumProfile::at(double t, double duration_s) const {
    switch (kind) {
        case Kind::Constant:
            return level;
        case Kind::Ramp: {
            const double u = duration_s > 0.0 ? std::clamp(t / duration_s, 0.0, 1.0) : 0.0;
            return ramp_start + (ramp_end - ramp_start) * u;
        }
        case Kind::Sinusoid:
            return sin_mean + sin_amp * std::sin(2.0 * std::numbers::pi * sin_freq_hz * t);
    }
    return level;
}

TimeSeries gen_rppg_waveform(const RppgConfig& cfg) {
    if (cfg.hr_bpm < 42.0 || cfg.hr_bpm > 240.0)
        throw InvalidInput("gen_rppg_waveform: hr_bpm outside [42, 240]");
    if (!(cfg.fs > 8.0)) throw InvalidInput("gen_rppg_waveform: fs must exceed 8 Hz");
    if (!(cfg.duration_s > 0.0)) throw InvalidInput("gen_rppg_waveform: duration must be > 0");
    if (cfg.n_harmonics < 0) throw InvalidInput("gen_rppg_waveform: n_harmonics must be >= 0");
    if (!(cfg.harmonic_decay > 0.0) || cfg.harmonic_decay > 1.0)
        throw InvalidInput("gen_rppg_waveform: harmonic_decay must be in (0, 1]");

    const std::size_t n = static_cast<std::size_t>(std::llround(cfg.duration_s * cfg.fs));
    if (n == 0) throw InvalidInput("gen_rppg_waveform: zero samples requested");
    const double f0 = cfg.hr_bpm / 60.0;

    std::vector<double> s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / cfg.fs;
        double v = 0.0;
        double amp = 1.0;
        for (int h = 0; h <= cfg.n_harmonics; ++h) {
            v += amp * std::sin(2.0 * std::numbers::pi * (h + 1) * f0 * t);
            amp *= cfg.harmonic_decay;
        }
        s[i] = v;
    }
    double peak = 0.0;
    for (double v : s) peak = std::max(peak, std::abs(v));
    if (peak > 0.0)
        for (double& v : s) v /= peak;

    TimeSeries ts{std::move(s), cfg.fs};
    if (cfg.noise_snr_db) ts = add_awgn(ts, *cfg.noise_snr_db, cfg.seed);
    return ts;
}

namespace {

void require_valid_scene(const SceneConfig& scene) {
    if (scene.width <= 0 || scene.height <= 0)
        throw InvalidInput("gen_skin_frames: nonpositive frame dimensions");
    if (!(scene.base_diffuse > 0.0))
        throw InvalidInput("gen_skin_frames: base_diffuse must be > 0");
    if (scene.pulse_depth < 0.0 || scene.pulse_depth > 0.2)
        throw InvalidInput("gen_skin_frames: pulse_depth outside [0, 0.2]");
    if (scene.specular_level < 0.0)
        throw InvalidInput("gen_skin_frames: specular_level must be >= 0");
    if (scene.pixel_noise_sigma < 0.0)
        throw InvalidInput("gen_skin_frames: pixel_noise_sigma must be >= 0");
}

} // namespace

FrameSequence gen_skin_frames(const SceneConfig& scene, const TimeSeries& rppg) {
    require_valid_scene(scene);
    require_valid(rppg, "gen_skin_frames");

    const std::size_t n_frames = rppg.size();
    const std::size_t px = static_cast<std::size_t>(scene.width) * scene.height;
    const double duration = rppg.duration_s();

    FrameSequence out;
    out.width = scene.width;
    out.height = scene.height;
    out.fs = rppg.fs;
    out.data.resize(n_frames * px);

    std::mt19937_64 eng(scene.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    for (std::size_t f = 0; f < n_frames; ++f) {
        const double t = static_cast<double>(f) / rppg.fs;
        const double illum = scene.illum.at(t, duration);
        const double level = illum * (scene.specular_level +
                                      scene.base_diffuse * (1.0 + scene.pulse_depth * rppg.samples[f]));
        double* frame = out.data.data() + f * px;
        if (scene.pixel_noise_sigma > 0.0) {
            for (std::size_t i = 0; i < px; ++i)
                frame[i] = std::max(0.0, level + scene.pixel_noise_sigma * gauss(eng));
        } else {
            std::fill(frame, frame + px, std::max(0.0, level));
        }
    }
    return out;
}

namespace {

// Separable Gaussian blur with reflecting edges; kernel radius 3*sigma.
void gaussian_blur(std::vector<double>& img, int w, int h, double sigma) {
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double ksum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
        ksum += kernel[i + radius];
    }
    for (double& k : kernel) k /= ksum;

    const auto reflect = [](int i, int n) {
        while (i < 0 || i >= n) {
            if (i < 0) i = -i;
            if (i >= n) i = 2 * n - 2 - i;
        }
        return i;
    };

    std::vector<double> tmp(img.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * img[y * w + reflect(x + i, w)];
            tmp[y * w + x] = acc;
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * tmp[reflect(y + i, h) * w + x];
            img[y * w + x] = acc;
        }
}

} // namespace

SpeckleSequence gen_speckles(const SpeckleConfig& cfg) {
    if (cfg.n_patterns < 1) throw InvalidInput("gen_speckles: n_patterns must be >= 1");
    if (cfg.width <= 0 || cfg.height <= 0)
        throw InvalidInput("gen_speckles: nonpositive pattern dimensions");
    if (cfg.kind == SpeckleKind::GaussianCorrelated && cfg.grain_px < 1.0)
        throw InvalidInput("gen_speckles: grain_px must be >= 1");

    const std::size_t px = static_cast<std::size_t>(cfg.width) * cfg.height;
    SpeckleSequence out;
    out.width = cfg.width;
    out.height = cfg.height;
    out.data.resize(static_cast<std::size_t>(cfg.n_patterns) * px);

    std::mt19937_64 eng(cfg.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    for (int p = 0; p < cfg.n_patterns; ++p) {
        double* pat = out.data.data() + static_cast<std::size_t>(p) * px;
        switch (cfg.kind) {
            case SpeckleKind::Binary: {
                // redraw all-zero patterns so the reference arm stays > 0
                bool any = false;
                while (!any) {
                    for (std::size_t i = 0; i < px; ++i) {
                        pat[i] = uni(eng) < 0.5 ? 0.0 : 1.0;
                        any = any || pat[i] > 0.0;
                    }
                }
                break;
            }
            case SpeckleKind::Uniform:
                for (std::size_t i = 0; i < px; ++i) pat[i] = uni(eng);
                break;
            case SpeckleKind::GaussianCorrelated: {
                // intensity of a blurred complex Gaussian field: exponential-like
                // statistics with correlation length ~grain_px
                std::vector<double> re(px), im(px);
                for (std::size_t i = 0; i < px; ++i) re[i] = gauss(eng);
                for (std::size_t i = 0; i < px; ++i) im[i] = gauss(eng);
                gaussian_blur(re, cfg.width, cfg.height, cfg.grain_px);
                gaussian_blur(im, cfg.width, cfg.height, cfg.grain_px);
                for (std::size_t i = 0; i < px; ++i) pat[i] = re[i] * re[i] + im[i] * im[i];
                break;
            }
        }
    }
    return out;
}

} // namespace gipulse
