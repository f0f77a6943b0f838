#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "gipulse/errors.hpp"
#include "gipulse/rng.hpp"
#include "gipulse/version.hpp"
#include "manifest.hpp"

namespace {

using gipulse::InvalidInput;
using nlohmann::json;
namespace fs = std::filesystem;

std::pair<double, double> parse_band(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw InvalidInput("band must be lo:hi in Hz, e.g. 0.7:4.0");
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
}

std::vector<int> parse_ints(const std::string& s, char sep, std::size_t expect,
                            const char* what) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto next = s.find(sep, pos);
        out.push_back(std::stoi(s.substr(pos, next - pos)));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (out.size() != expect) throw InvalidInput(std::string(what) + ": malformed value");
    return out;
}

std::vector<double> parse_snr_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto next = s.find(',', pos);
        out.push_back(std::stod(s.substr(pos, next - pos)));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (out.empty()) throw InvalidInput("--snr: need at least one dB value");
    return out;
}

json parse_illum(const std::string& s) {
    // const:<level> | ramp:<start>:<end> | sin:<mean>:<amp>:<freq_hz>
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto next = s.find(':', pos);
        parts.push_back(s.substr(pos, next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts[0] == "const" && parts.size() == 2)
        return {{"kind", "constant"}, {"level", std::stod(parts[1])}};
    if (parts[0] == "ramp" && parts.size() == 3)
        return {{"kind", "ramp"}, {"start", std::stod(parts[1])}, {"end", std::stod(parts[2])}};
    if (parts[0] == "sin" && parts.size() == 4)
        return {{"kind", "sinusoid"},
                {"mean", std::stod(parts[1])},
                {"amp", std::stod(parts[2])},
                {"freq_hz", std::stod(parts[3])}};
    throw InvalidInput("--illum: expect const:<l>, ramp:<a>:<b> or sin:<m>:<a>:<f>");
}

void emit_error(const std::string& kind, const std::string& message) {
    json err;
    err["error"] = {{"kind", kind}, {"message", message}};
    std::cerr << err.dump() << "\n";
}

int run_and_manifest(const std::string& name, const json& config, const fs::path& out_dir) {
    gipulse::cli::RunManifest manifest;
    const auto t0 = std::chrono::steady_clock::now();
    gipulse::cli::exec_command(name, config, out_dir, manifest);
    manifest.duration_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    manifest.write(out_dir);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ghost-imaging heart-rate simulation and extraction toolkit"};
    app.set_version_flag("--version", gipulse::kVersion);
    app.require_subcommand(1);

    // --- synth ---------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate an rPPG waveform (and optional frames)");
    double sy_hr = 75.0, sy_fs = 30.0, sy_dur = 12.0, sy_decay = 0.5;
    int sy_harm = 0;
    double sy_noise = 0.0;
    std::uint64_t sy_seed = 0;
    std::string sy_out;
    bool sy_frames = false;
    int sy_w = 32, sy_h = 32;
    double sy_vd = 1.0, sy_pd = 0.03, sy_vs = 0.1, sy_pxn = 0.0;
    std::string sy_illum = "const:1.0";
    synth->add_option("--hr", sy_hr, "heart rate in bpm")->required();
    synth->add_option("--fs", sy_fs, "sample rate in Hz");
    synth->add_option("--duration", sy_dur, "duration in seconds");
    synth->add_option("--harmonics", sy_harm, "number of harmonics above the fundamental");
    synth->add_option("--harmonic-decay", sy_decay, "per-harmonic amplitude ratio");
    auto* sy_noise_opt = synth->add_option("--noise-snr", sy_noise, "waveform AWGN SNR in dB");
    synth->add_option("--seed", sy_seed, "master seed")->required();
    synth->add_option("--out", sy_out, "output directory")->required();
    synth->add_flag("--frames", sy_frames, "also render a pulsing skin-patch frame sequence");
    synth->add_option("--width", sy_w, "frame width in pixels");
    synth->add_option("--height", sy_h, "frame height in pixels");
    synth->add_option("--base-diffuse", sy_vd, "diffuse reflection level");
    synth->add_option("--pulse-depth", sy_pd, "fractional diffuse modulation");
    synth->add_option("--specular", sy_vs, "specular reflection level");
    synth->add_option("--pixel-noise", sy_pxn, "per-pixel noise sigma");
    synth->add_option("--illum", sy_illum, "illumination: const:<l>, ramp:<a>:<b>, sin:<m>:<a>:<f>");

    // --- speckles ------------------------------------------------------
    auto* speckles = app.add_subcommand("speckles", "generate a speckle pattern stack");
    int sp_n = 1000, sp_w = 32, sp_h = 32;
    std::string sp_kind = "binary";
    double sp_grain = 2.0;
    std::uint64_t sp_seed = 0;
    std::string sp_out;
    speckles->add_option("--n", sp_n, "number of patterns")->required();
    speckles->add_option("--width", sp_w, "pattern width");
    speckles->add_option("--height", sp_h, "pattern height");
    speckles->add_option("--kind", sp_kind, "binary | uniform | gaussian");
    speckles->add_option("--grain", sp_grain, "grain size in px (gaussian kind)");
    speckles->add_option("--seed", sp_seed, "master seed")->required();
    speckles->add_option("--out", sp_out, "output directory")->required();

    // --- bucket --------------------------------------------------------
    auto* bucket = app.add_subcommand("bucket", "single-pixel measurement of frames under speckles");
    std::string bk_frames, bk_speckles, bk_out;
    double bk_noise = 0.0;
    std::uint64_t bk_seed = 0;
    bucket->add_option("--frames", bk_frames, "frames GIFR file")->required();
    bucket->add_option("--speckles", bk_speckles, "speckles GIFR file")->required();
    bucket->add_option("--noise", bk_noise, "relative detector noise sigma");
    auto* bk_seed_opt = bucket->add_option("--seed", bk_seed, "seed (required when --noise > 0)");
    bucket->add_option("--out", bk_out, "output directory")->required();

    // --- dgi -----------------------------------------------------------
    auto* dgi = app.add_subcommand("dgi", "differential ghost imaging reconstruction");
    std::string dg_bucket, dg_reference, dg_speckles, dg_formula = "canonical", dg_out;
    dgi->add_option("--bucket", dg_bucket, "bucket TimeSeries CSV")->required();
    dgi->add_option("--reference", dg_reference, "reference TimeSeries CSV")->required();
    dgi->add_option("--speckles", dg_speckles, "speckles GIFR file")->required();
    dgi->add_option("--formula", dg_formula, "canonical | literal");
    dgi->add_option("--out", dg_out, "output directory")->required();

    // --- extract -------------------------------------------------------
    auto* extract = app.add_subcommand("extract", "heart rate from a bucket signal");
    std::string ex_in, ex_band = "0.7:4.0", ex_init = "uniform", ex_out;
    double ex_fs = 0.0, ex_alpha = 2000.0, ex_tau = 0.0, ex_tol = 1e-7;
    int ex_k = 3, ex_maxit = 500;
    std::uint64_t ex_init_seed = 0;
    bool ex_keep = false;
    extract->add_option("--in", ex_in, "input TimeSeries CSV")->required();
    auto* ex_fs_opt = extract->add_option("--fs", ex_fs, "override the sample rate in Hz");
    extract->add_option("--band", ex_band, "prior band lo:hi in Hz");
    extract->add_option("--k", ex_k, "VMD mode count");
    extract->add_option("--alpha", ex_alpha, "VMD bandwidth penalty");
    extract->add_option("--tau", ex_tau, "VMD dual step");
    extract->add_option("--tol", ex_tol, "VMD convergence tolerance");
    extract->add_option("--max-iter", ex_maxit, "VMD iteration cap");
    extract->add_option("--init", ex_init, "VMD init: uniform | zeros | random");
    extract->add_option("--init-seed", ex_init_seed, "seed for random init");
    extract->add_flag("--keep-intermediates", ex_keep, "write stage CSV artifacts");
    extract->add_option("--out", ex_out, "output directory")->required();

    // --- extract-frames --------------------------------------------------
    auto* exframes = app.add_subcommand("extract-frames", "heart rate from a frame sequence");
    std::string ef_in, ef_roi, ef_band = "0.7:4.0", ef_out;
    exframes->add_option("--in", ef_in, "input frames GIFR")->required();
    exframes->add_option("--roi", ef_roi, "region of interest x:y:w:h (default full frame)");
    exframes->add_option("--band", ef_band, "prior band lo:hi in Hz");
    exframes->add_option("--out", ef_out, "output directory")->required();

    // --- sweep -----------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo SNR sweep");
    std::string sw_snr, sw_hr = "75", sw_recipe = "sinusoid", sw_speckle = "binary", sw_out;
    int sw_trials = 100, sw_jobs = 1, sw_w = 16, sw_h = 16;
    double sw_fs = 30.0, sw_dur = 12.0, sw_tol = 0.02, sw_validity = 10.0;
    double sw_pd = 0.03, sw_pxn = 0.0, sw_dn = 0.0;
    std::uint64_t sw_seed = 0;
    sweep->add_option("--snr", sw_snr, "comma-separated SNR list in dB")->required();
    sweep->add_option("--trials", sw_trials, "trials per SNR")->required();
    sweep->add_option("--hr", sw_hr, "true heart rate in bpm, or 'random'");
    sweep->add_option("--fs", sw_fs, "recipe sample rate in Hz");
    sweep->add_option("--duration", sw_dur, "recipe duration in seconds");
    sweep->add_option("--recipe", sw_recipe, "sinusoid | gi-chain");
    sweep->add_option("--width", sw_w, "gi-chain scene width");
    sweep->add_option("--height", sw_h, "gi-chain scene height");
    sweep->add_option("--pulse-depth", sw_pd, "gi-chain pulse depth");
    sweep->add_option("--pixel-noise", sw_pxn, "gi-chain pixel noise sigma");
    sweep->add_option("--detector-noise", sw_dn, "gi-chain detector noise sigma");
    sweep->add_option("--speckle-kind", sw_speckle, "binary | uniform | gaussian");
    sweep->add_option("--tol-hz", sw_tol, "success tolerance in Hz");
    sweep->add_option("--validity-bpm", sw_validity, "validity threshold in bpm");
    sweep->add_option("--seed", sw_seed, "master seed")->required();
    sweep->add_option("--jobs", sw_jobs, "parallel trial workers");
    sweep->add_option("--out", sw_out, "output directory")->required();

    // --- gi-chain --------------------------------------------------------
    auto* chain = app.add_subcommand("gi-chain", "composed scene->speckle->bucket pipelines");
    std::string gc_mode, gc_object, gc_mask, gc_speckle = "binary", gc_formula = "canonical";
    std::string gc_band = "0.7:4.0", gc_out = ".";
    int gc_patterns = 5000, gc_w = 16, gc_h = 16, gc_k = 3;
    double gc_hr = 75.0, gc_pd = 0.03, gc_fs = 30.0, gc_dur = 12.0;
    double gc_vd = 1.0, gc_vs = 0.1, gc_pxn = 0.0, gc_dn = 0.0;
    bool gc_no_norm = false, gc_keep = false;
    std::uint64_t gc_seed = 0;
    chain->add_option("--mode", gc_mode, "dgi | hr")->required();
    chain->add_option("--object", gc_object, "object image GIFR (dgi mode)");
    chain->add_option("--object-mask", gc_mask, "generate a WxH random mask object (dgi mode)");
    chain->add_option("--patterns", gc_patterns, "number of speckle patterns (dgi mode)");
    chain->add_option("--hr", gc_hr, "true heart rate in bpm (hr mode)");
    chain->add_option("--pulse-depth", gc_pd, "diffuse modulation depth (hr mode)");
    chain->add_option("--patterns-fs", gc_fs, "pattern rate in Hz (hr mode)");
    chain->add_option("--duration", gc_dur, "duration in seconds (hr mode)");
    chain->add_option("--width", gc_w, "scene width (hr mode)");
    chain->add_option("--height", gc_h, "scene height (hr mode)");
    chain->add_option("--base-diffuse", gc_vd, "diffuse level (hr mode)");
    chain->add_option("--specular", gc_vs, "specular level (hr mode)");
    chain->add_option("--pixel-noise", gc_pxn, "pixel noise sigma (hr mode)");
    chain->add_option("--detector-noise", gc_dn, "detector noise sigma");
    chain->add_option("--speckle-kind", gc_speckle, "binary | uniform | gaussian");
    chain->add_option("--formula", gc_formula, "canonical | literal (dgi mode)");
    chain->add_option("--band", gc_band, "prior band lo:hi (hr mode)");
    chain->add_option("--k", gc_k, "VMD mode count (hr mode)");
    chain->add_flag("--no-normalize", gc_no_norm, "skip reference normalization (hr mode)");
    chain->add_flag("--keep-intermediates", gc_keep, "write stage CSV artifacts (hr mode)");
    chain->add_option("--seed", gc_seed, "master seed")->required();
    chain->add_option("--out", gc_out, "output directory");

    // --- replay ----------------------------------------------------------
    auto* replay = app.add_subcommand("replay", "re-run a recorded manifest");
    std::string rp_manifest, rp_out;
    replay->add_option("--manifest", rp_manifest, "path to manifest.json")->required();
    replay->add_option("--out", rp_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << app.help() << "\n";
        emit_error("usage", e.what());
        return 1;
    }

    try {
        if (synth->parsed()) {
            json cfg;
            cfg["hr_bpm"] = sy_hr;
            cfg["duration_s"] = sy_dur;
            cfg["fs_hz"] = sy_fs;
            cfg["n_harmonics"] = sy_harm;
            cfg["harmonic_decay"] = sy_decay;
            cfg["noise_snr_db"] = sy_noise_opt->count() > 0 ? json(sy_noise) : json(nullptr);
            cfg["seed"] = sy_seed;
            if (sy_frames) {
                cfg["frames"] = {{"width", sy_w},
                                 {"height", sy_h},
                                 {"base_diffuse", sy_vd},
                                 {"pulse_depth", sy_pd},
                                 {"specular_level", sy_vs},
                                 {"pixel_noise_sigma", sy_pxn},
                                 {"illum", parse_illum(sy_illum)},
                                 {"seed", gipulse::derive_seed(sy_seed, 1)}};
            } else {
                cfg["frames"] = nullptr;
            }
            return run_and_manifest("synth", cfg, sy_out);
        }
        if (speckles->parsed()) {
            json cfg{{"n_patterns", sp_n}, {"width", sp_w},       {"height", sp_h},
                     {"kind", sp_kind},    {"grain_px", sp_grain}, {"seed", sp_seed}};
            return run_and_manifest("speckles", cfg, sp_out);
        }
        if (bucket->parsed()) {
            if (bk_noise > 0.0 && bk_seed_opt->count() == 0)
                throw InvalidInput("bucket: --seed is required when --noise > 0");
            json cfg{{"frames", bk_frames},
                     {"speckles", bk_speckles},
                     {"detector_noise_sigma", bk_noise},
                     {"seed", bk_seed}};
            return run_and_manifest("bucket", cfg, bk_out);
        }
        if (dgi->parsed()) {
            json cfg{{"bucket", dg_bucket},
                     {"reference", dg_reference},
                     {"speckles", dg_speckles},
                     {"formula", dg_formula}};
            return run_and_manifest("dgi", cfg, dg_out);
        }
        if (extract->parsed()) {
            const auto [lo, hi] = parse_band(ex_band);
            json cfg;
            cfg["input"] = ex_in;
            cfg["fs_hz"] = ex_fs_opt->count() > 0 ? json(ex_fs) : json(nullptr);
            cfg["band"] = {lo, hi};
            cfg["vmd"] = {{"k", ex_k},           {"alpha", ex_alpha},
                          {"tau", ex_tau},       {"tol", ex_tol},
                          {"max_iter", ex_maxit}, {"init", ex_init},
                          {"init_seed", ex_init_seed}};
            cfg["keep_intermediates"] = ex_keep;
            return run_and_manifest("extract", cfg, ex_out);
        }
        if (exframes->parsed()) {
            const auto [lo, hi] = parse_band(ef_band);
            json cfg;
            cfg["input"] = ef_in;
            cfg["band"] = {lo, hi};
            if (ef_roi.empty()) {
                cfg["roi"] = nullptr;
            } else {
                const auto r = parse_ints(ef_roi, ':', 4, "--roi");
                cfg["roi"] = {r[0], r[1], r[2], r[3]};
            }
            return run_and_manifest("extract-frames", cfg, ef_out);
        }
        if (sweep->parsed()) {
            json cfg;
            cfg["snr_db_list"] = parse_snr_list(sw_snr);
            cfg["trials"] = sw_trials;
            cfg["hr_bpm"] = sw_hr == "random" ? json(nullptr) : json(std::stod(sw_hr));
            cfg["recipe"] = {{"kind", sw_recipe},
                             {"fs_hz", sw_fs},
                             {"duration_s", sw_dur},
                             {"width", sw_w},
                             {"height", sw_h},
                             {"pulse_depth", sw_pd},
                             {"pixel_noise_sigma", sw_pxn},
                             {"detector_noise_sigma", sw_dn},
                             {"speckle_kind", sw_speckle}};
            cfg["tol_hz"] = sw_tol;
            cfg["validity_bpm"] = sw_validity;
            cfg["seed"] = sw_seed;
            cfg["jobs"] = sw_jobs;
            return run_and_manifest("sweep", cfg, sw_out);
        }
        if (chain->parsed()) {
            json cfg;
            cfg["mode"] = gc_mode;
            cfg["seed"] = gc_seed;
            if (gc_mode == "dgi") {
                if (!gc_object.empty()) {
                    cfg["object"] = gc_object;
                    cfg["object_mask"] = nullptr;
                } else if (!gc_mask.empty()) {
                    const auto wh = parse_ints(gc_mask, 'x', 2, "--object-mask");
                    cfg["object"] = nullptr;
                    cfg["object_mask"] = {{"width", wh[0]}, {"height", wh[1]}};
                } else {
                    throw InvalidInput("gi-chain --mode dgi needs --object or --object-mask");
                }
                cfg["patterns"] = gc_patterns;
                cfg["speckle_kind"] = gc_speckle;
                cfg["detector_noise_sigma"] = gc_dn;
                cfg["formula"] = gc_formula;
            } else {
                const auto [lo, hi] = parse_band(gc_band);
                cfg["hr_bpm"] = gc_hr;
                cfg["pulse_depth"] = gc_pd;
                cfg["fs_hz"] = gc_fs;
                cfg["duration_s"] = gc_dur;
                cfg["scene"] = {{"width", gc_w},
                                {"height", gc_h},
                                {"base_diffuse", gc_vd},
                                {"specular_level", gc_vs},
                                {"pixel_noise_sigma", gc_pxn}};
                cfg["detector_noise_sigma"] = gc_dn;
                cfg["speckle_kind"] = gc_speckle;
                cfg["normalize"] = !gc_no_norm;
                cfg["band"] = {lo, hi};
                cfg["vmd"] = {{"k", gc_k}};
                cfg["keep_intermediates"] = gc_keep;
            }
            return run_and_manifest("gi-chain", cfg, gc_out);
        }
        if (replay->parsed()) {
            auto m = gipulse::cli::RunManifest::from_file(rp_manifest);
            return run_and_manifest(m.subcommand, m.config, rp_out);
        }
    } catch (const InvalidInput& e) {
        emit_error("invalid-input", e.what());
        return 1;
    } catch (const gipulse::DegenerateSignal& e) {
        emit_error("degenerate-signal", e.what());
        return 2;
    } catch (const gipulse::EmptyReport& e) {
        emit_error("empty-report", e.what());
        return 2;
    } catch (const gipulse::IoError& e) {
        emit_error("io", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("runtime", e.what());
        return 2;
    }
    return 0;
}
