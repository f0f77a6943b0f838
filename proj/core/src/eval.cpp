#include "gipulse/eval.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "gipulse/errors.hpp"
#include "gipulse/gi.hpp"
#include "gipulse/rng.hpp"
#include "gipulse/signal_core.hpp"

namespace gipulse {

namespace {

// Per-role sub-seeds of a trial seed, so each stochastic stage draws from
// its own stream.
enum SeedRole : std::uint64_t {
    kRoleAwgn = 1,
    kRoleScene = 2,
    kRoleSpeckle = 3,
    kRoleDetector = 4,
    kRoleHr = 5,
};

TimeSeries synthesize_clean(double true_hr_bpm, const RecipeConfig& recipe,
                            std::uint64_t seed, bool normalize_by_reference) {
    RppgConfig rppg;
    rppg.hr_bpm = true_hr_bpm;
    rppg.duration_s = recipe.duration_s;
    rppg.fs = recipe.fs;
    rppg.n_harmonics = 0;
    rppg.seed = seed;
    TimeSeries wave = gen_rppg_waveform(rppg);
    if (recipe.kind == RecipeKind::Sinusoid) return wave;

    SceneConfig scene;
    scene.width = recipe.width;
    scene.height = recipe.height;
    scene.base_diffuse = recipe.base_diffuse;
    scene.pulse_depth = recipe.pulse_depth;
    scene.specular_level = recipe.specular_level;
    scene.pixel_noise_sigma = recipe.pixel_noise_sigma;
    scene.seed = derive_seed(seed, kRoleScene);
    FrameSequence frames = gen_skin_frames(scene, wave);

    SpeckleConfig speckle;
    speckle.n_patterns = static_cast<int>(frames.frame_count());
    speckle.width = recipe.width;
    speckle.height = recipe.height;
    speckle.kind = recipe.speckle_kind;
    speckle.seed = derive_seed(seed, kRoleSpeckle);
    SpeckleSequence patterns = gen_speckles(speckle);

    BucketRecord rec = bucket_measure(patterns, frames, recipe.detector_noise_sigma,
                                      derive_seed(seed, kRoleDetector));
    return normalize_by_reference ? normalize_bucket(rec) : rec.bucket;
}

} // namespace

TrialOutcome run_trial(double true_hr_bpm, double snr_db, std::uint64_t seed,
                       const ExtractConfig& extract_cfg, const RecipeConfig& recipe,
                       double tol_hz, double validity_bpm) {
    TrialOutcome out;
    out.seed = seed;
    out.true_hr_bpm = true_hr_bpm;
    out.f_true_hz = true_hr_bpm / 60.0;
    try {
        TimeSeries clean =
            synthesize_clean(true_hr_bpm, recipe, seed, extract_cfg.normalize_by_reference);
        TimeSeries noisy = add_awgn(clean, snr_db, derive_seed(seed, kRoleAwgn));
        ExtractResult res = extract_hr_from_bucket(noisy, extract_cfg);
        out.est_hr_bpm = res.hr_bpm;
        out.f_est_hz = res.f_max_hz;
        out.out_of_band = res.out_of_band;
        out.success = std::abs(out.f_est_hz - out.f_true_hz) <= tol_hz;
        out.valid = std::abs(out.est_hr_bpm - out.true_hr_bpm) <= validity_bpm;
    } catch (const DegenerateSignal&) {
        // recorded as a failed trial, zeros signal "no estimate"
    }
    return out;
}

SweepResult snr_sweep(const SweepConfig& cfg, const ExtractConfig& extract_cfg, int jobs) {
    if (cfg.snr_db_list.empty()) throw InvalidInput("snr_sweep: empty snr_db_list");
    if (cfg.n_trials < 1) throw InvalidInput("snr_sweep: n_trials must be >= 1");
    if (!(cfg.tol_hz > 0.0)) throw InvalidInput("snr_sweep: tol_hz must be > 0");

    const std::size_t n_snr = cfg.snr_db_list.size();
    const std::size_t total = n_snr * static_cast<std::size_t>(cfg.n_trials);

    SweepResult result;
    result.config = cfg;
    result.trials.resize(total);

    const auto worker_body = [&](std::size_t flat) {
        const std::size_t si = flat / cfg.n_trials;
        const std::size_t ti = flat % cfg.n_trials;
        const std::uint64_t seed = derive_seed(cfg.master_seed, si, ti);
        double hr = cfg.true_hr_bpm.value_or(0.0);
        if (!cfg.true_hr_bpm) {
            // per-trial uniform draw in [42, 240] from the trial's own stream
            std::mt19937_64 eng(derive_seed(seed, kRoleHr));
            std::uniform_real_distribution<double> uni(42.0, 240.0);
            hr = uni(eng);
        }
        result.trials[flat] = run_trial(hr, cfg.snr_db_list[si], seed, extract_cfg,
                                        cfg.recipe, cfg.tol_hz, cfg.validity_bpm);
    };

    if (jobs <= 1) {
        for (std::size_t flat = 0; flat < total; ++flat) worker_body(flat);
    } else {
        // pre-assigned seeds make the result independent of scheduling
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int n_threads = std::min<int>(jobs, static_cast<int>(total));
        pool.reserve(n_threads);
        for (int w = 0; w < n_threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t flat = next.fetch_add(1); flat < total;
                     flat = next.fetch_add(1))
                    worker_body(flat);
            });
        for (auto& th : pool) th.join();
    }

    result.per_snr.reserve(n_snr);
    for (std::size_t si = 0; si < n_snr; ++si) {
        SnrAggregate agg;
        agg.snr_db = cfg.snr_db_list[si];
        double abs_err_sum = 0.0;
        for (int ti = 0; ti < cfg.n_trials; ++ti) {
            const TrialOutcome& t = result.trials[si * cfg.n_trials + ti];
            agg.n_success += t.success;
            if (t.valid) {
                ++agg.n_valid;
                abs_err_sum += std::abs(t.est_hr_bpm - t.true_hr_bpm);
            }
        }
        agg.success_rate = static_cast<double>(agg.n_success) / cfg.n_trials;
        if (agg.n_valid > 0) agg.mae_bpm = abs_err_sum / agg.n_valid;
        result.per_snr.push_back(agg);
    }
    return result;
}

MaeReport mae_report(std::span<const TrialOutcome> outcomes) {
    if (outcomes.empty()) throw InvalidInput("mae_report: empty outcome list");
    std::vector<double> est, truth;
    for (const TrialOutcome& t : outcomes) {
        if (!t.valid) continue;
        est.push_back(t.est_hr_bpm);
        truth.push_back(t.true_hr_bpm);
    }
    if (est.empty()) throw EmptyReport("mae_report: no valid trials");
    return {static_cast<int>(est.size()), mae(est, truth)};
}

} // namespace gipulse
