#ifndef GIPULSE_EVAL_HPP
#define GIPULSE_EVAL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gipulse/hr_extract.hpp"
#include "gipulse/synth.hpp"

namespace gipulse {

/// One Monte Carlo trial record. Failed pipeline runs (degenerate signal)
/// carry est_hr_bpm = f_est_hz = 0 with success = valid = false.
struct TrialOutcome {
    std::uint64_t seed = 0;
    double true_hr_bpm = 0.0;
    double est_hr_bpm = 0.0;
    double f_true_hz = 0.0;
    double f_est_hz = 0.0;
    bool success = false;     // |f_est - f_true| <= tol_hz
    bool valid = false;       // |est_hr - true_hr| <= validity_bpm
    bool out_of_band = false;
};

enum class RecipeKind {
    Sinusoid, // gen_rppg_waveform with no harmonics; the default
    GiChain,  // scene -> speckles -> bucket -> reference-normalized signal
};

/// How a trial synthesizes its clean signal before noise injection.
struct RecipeConfig {
    RecipeKind kind = RecipeKind::Sinusoid;
    double fs = 30.0;
    double duration_s = 12.0;
    // GiChain parameters:
    int width = 16;
    int height = 16;
    double pulse_depth = 0.03;
    double base_diffuse = 1.0;
    double specular_level = 0.1;
    double pixel_noise_sigma = 0.0;
    double detector_noise_sigma = 0.0;
    SpeckleKind speckle_kind = SpeckleKind::Binary;
};

struct SweepConfig {
    std::vector<double> snr_db_list;
    int n_trials = 100;
    std::optional<double> true_hr_bpm = 75.0; // nullopt = per-trial uniform in [42, 240]
    RecipeConfig recipe{};
    double tol_hz = 0.02;
    double validity_bpm = 10.0;
    std::uint64_t master_seed = 0;
};

struct SnrAggregate {
    double snr_db = 0.0;
    int n_success = 0;
    int n_valid = 0;
    double success_rate = 0.0;
    std::optional<double> mae_bpm{}; // over valid trials; nullopt when none
};

/// Aggregates plus the full per-trial record. Every aggregate is a pure
/// function of the records; trials are stored SNR-major, trial-minor.
struct SweepResult {
    SweepConfig config;
    std::vector<SnrAggregate> per_snr;
    std::vector<TrialOutcome> trials; // size = snr_db_list.size() * n_trials
};

/// Synthesize the recipe signal at true_hr_bpm, inject AWGN at snr_db with
/// the trial seed, run extract_hr_from_bucket, grade the outcome. Fully
/// deterministic per (arguments, seed); extraction errors become failed
/// trials rather than exceptions.
TrialOutcome run_trial(double true_hr_bpm, double snr_db, std::uint64_t seed,
                       const ExtractConfig& extract_cfg, const RecipeConfig& recipe,
                       double tol_hz = 0.02, double validity_bpm = 10.0);

/// Monte Carlo sweep over snr_db_list, n_trials per SNR. Per-trial seeds
/// are derive_seed(master_seed, snr_index, trial_index), so the result is
/// independent of execution order; jobs > 1 parallelizes over trials.
SweepResult snr_sweep(const SweepConfig& cfg, const ExtractConfig& extract_cfg, int jobs = 1);

struct MaeReport {
    int n_valid = 0;
    double mae_bpm = 0.0;
};

/// MAE over the valid trials only. Throws EmptyReport when nothing is valid.
MaeReport mae_report(std::span<const TrialOutcome> outcomes);

} // namespace gipulse

#endif
