#include "commands.hpp"

#include <cmath>
#include <fstream>

#include "gipulse/errors.hpp"
#include "gipulse/eval.hpp"
#include "gipulse/gi.hpp"
#include "gipulse/hr_extract.hpp"
#include "gipulse/io.hpp"
#include "gipulse/rng.hpp"
#include "gipulse/signal_core.hpp"
#include "gipulse/synth.hpp"

namespace gipulse::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

FrequencyBand band_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw InvalidInput("band must be [lo, hi]");
    return {j[0].get<double>(), j[1].get<double>()};
}

SpeckleKind speckle_kind_from(const std::string& s) {
    if (s == "binary") return SpeckleKind::Binary;
    if (s == "uniform") return SpeckleKind::Uniform;
    if (s == "gaussian") return SpeckleKind::GaussianCorrelated;
    throw InvalidInput("unknown speckle kind: " + s);
}

VmdConfig vmd_from(const json& j) {
    VmdConfig cfg;
    if (j.is_null()) return cfg;
    cfg.K = j.value("k", cfg.K);
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.tau = j.value("tau", cfg.tau);
    cfg.tol = j.value("tol", cfg.tol);
    cfg.max_iter = j.value("max_iter", cfg.max_iter);
    const std::string init = j.value("init", "uniform");
    if (init == "uniform")
        cfg.init = VmdInit::Uniform;
    else if (init == "zeros")
        cfg.init = VmdInit::Zeros;
    else if (init == "random")
        cfg.init = VmdInit::SeededRandom;
    else
        throw InvalidInput("unknown vmd init: " + init);
    cfg.init_seed = j.value("init_seed", std::uint64_t{0});
    return cfg;
}

IllumProfile illum_from(const json& j) {
    IllumProfile p;
    if (j.is_null()) return p;
    const std::string kind = j.value("kind", "constant");
    if (kind == "constant") {
        p.kind = IllumProfile::Kind::Constant;
        p.level = j.value("level", 1.0);
    } else if (kind == "ramp") {
        p.kind = IllumProfile::Kind::Ramp;
        p.ramp_start = j.value("start", 1.0);
        p.ramp_end = j.value("end", 1.0);
    } else if (kind == "sinusoid") {
        p.kind = IllumProfile::Kind::Sinusoid;
        p.sin_mean = j.value("mean", 1.0);
        p.sin_amp = j.value("amp", 0.0);
        p.sin_freq_hz = j.value("freq_hz", 0.0);
    } else {
        throw InvalidInput("unknown illumination kind: " + kind);
    }
    return p;
}

SceneConfig scene_from(const json& j, double default_pulse_depth = 0.03) {
    SceneConfig scene;
    scene.width = j.value("width", scene.width);
    scene.height = j.value("height", scene.height);
    scene.base_diffuse = j.value("base_diffuse", scene.base_diffuse);
    scene.pulse_depth = j.value("pulse_depth", default_pulse_depth);
    scene.specular_level = j.value("specular_level", scene.specular_level);
    scene.pixel_noise_sigma = j.value("pixel_noise_sigma", scene.pixel_noise_sigma);
    scene.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("illum")) scene.illum = illum_from(j["illum"]);
    return scene;
}

double pearson(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

void write_result(const ExtractResult& result, const fs::path& out_dir, RunManifest& manifest,
                  bool keep_intermediates) {
    std::ofstream out(out_dir / "result.json");
    if (!out) throw IoError("cannot write result.json in " + out_dir.string());
    out << io::extract_result_json(result, keep_intermediates ? out_dir : fs::path{});
    manifest.outputs.push_back("result.json");
    if (keep_intermediates) {
        for (const char* name :
             {"01_detrended.csv", "02_autocorrelation.csv", "03_vmd_modes.csv",
              "04_filtered_imf.csv", "05_cross_correlation.csv", "06_spectrum.csv"})
            if (fs::exists(out_dir / name)) manifest.outputs.push_back(name);
    }
}

void exec_synth(const json& cfg, const fs::path& out, RunManifest& m) {
    RppgConfig rppg;
    rppg.hr_bpm = cfg.at("hr_bpm").get<double>();
    rppg.duration_s = cfg.at("duration_s").get<double>();
    rppg.fs = cfg.at("fs_hz").get<double>();
    rppg.n_harmonics = cfg.value("n_harmonics", 0);
    rppg.harmonic_decay = cfg.value("harmonic_decay", 0.5);
    if (cfg.contains("noise_snr_db") && !cfg["noise_snr_db"].is_null())
        rppg.noise_snr_db = cfg["noise_snr_db"].get<double>();
    rppg.seed = cfg.at("seed").get<std::uint64_t>();

    TimeSeries wave = gen_rppg_waveform(rppg);
    io::write_timeseries_csv(out / "rppg.csv", wave);
    m.outputs = {"rppg.csv", "rppg.json"};

    if (cfg.contains("frames") && !cfg["frames"].is_null()) {
        SceneConfig scene = scene_from(cfg["frames"]);
        FrameSequence frames = gen_skin_frames(scene, wave);
        io::write_gifr(out / "frames.gifr", frames);
        m.outputs.push_back("frames.gifr");
    }
}

void exec_speckles(const json& cfg, const fs::path& out, RunManifest& m) {
    SpeckleConfig sp;
    sp.n_patterns = cfg.at("n_patterns").get<int>();
    sp.width = cfg.at("width").get<int>();
    sp.height = cfg.at("height").get<int>();
    sp.kind = speckle_kind_from(cfg.value("kind", "binary"));
    sp.grain_px = cfg.value("grain_px", 2.0);
    sp.seed = cfg.at("seed").get<std::uint64_t>();
    io::write_gifr(out / "speckles.gifr", gen_speckles(sp));
    m.outputs = {"speckles.gifr"};
}

void exec_bucket(const json& cfg, const fs::path& out, RunManifest& m) {
    const std::string frames_path = cfg.at("frames").get<std::string>();
    const std::string speckles_path = cfg.at("speckles").get<std::string>();
    m.inputs = {frames_path, speckles_path};
    FrameSequence frames = io::read_gifr_frames(frames_path);
    SpeckleSequence speckles = io::read_gifr_speckles(speckles_path);
    BucketRecord rec =
        bucket_measure(speckles, frames, cfg.value("detector_noise_sigma", 0.0),
                       cfg.value("seed", std::uint64_t{0}));
    io::write_timeseries_csv(out / "bucket.csv", rec.bucket);
    io::write_timeseries_csv(out / "reference.csv", rec.reference);
    m.outputs = {"bucket.csv", "bucket.json", "reference.csv", "reference.json"};
}

void exec_dgi(const json& cfg, const fs::path& out, RunManifest& m) {
    const std::string bucket_path = cfg.at("bucket").get<std::string>();
    const std::string reference_path = cfg.at("reference").get<std::string>();
    const std::string speckles_path = cfg.at("speckles").get<std::string>();
    m.inputs = {bucket_path, reference_path, speckles_path};
    BucketRecord rec{io::read_timeseries_csv(bucket_path),
                     io::read_timeseries_csv(reference_path)};
    SpeckleSequence speckles = io::read_gifr_speckles(speckles_path);
    const DgiFormula formula = cfg.value("formula", "canonical") == "literal"
                                   ? DgiFormula::Literal
                                   : DgiFormula::Canonical;
    io::write_gifr(out / "recon.gifr", dgi_reconstruct(rec, speckles, formula));
    m.outputs = {"recon.gifr"};
}

void exec_extract(const json& cfg, const fs::path& out, RunManifest& m) {
    const std::string input = cfg.at("input").get<std::string>();
    m.inputs = {input};
    TimeSeries b = io::read_timeseries_csv(input);
    if (cfg.contains("fs_hz") && !cfg["fs_hz"].is_null()) b.fs = cfg["fs_hz"].get<double>();

    // optional reference arm: divide out per-pattern speckle energy
    if (cfg.contains("reference") && !cfg["reference"].is_null()) {
        const std::string ref_path = cfg["reference"].get<std::string>();
        m.inputs.push_back(ref_path);
        TimeSeries ref = io::read_timeseries_csv(ref_path);
        ref.fs = b.fs;
        b = normalize_bucket(BucketRecord{std::move(b), std::move(ref)});
    }

    ExtractConfig ecfg;
    if (cfg.contains("band")) ecfg.band = band_from(cfg["band"]);
    ecfg.vmd = vmd_from(cfg.value("vmd", json{}));
    ecfg.keep_intermediates = cfg.value("keep_intermediates", false);
    ExtractResult result = extract_hr_from_bucket(b, ecfg);
    write_result(result, out, m, ecfg.keep_intermediates);
}

void exec_extract_frames(const json& cfg, const fs::path& out, RunManifest& m) {
    const std::string input = cfg.at("input").get<std::string>();
    m.inputs = {input};
    FrameSequence frames = io::read_gifr_frames(input);

    ExtractConfig ecfg;
    if (cfg.contains("band")) ecfg.band = band_from(cfg["band"]);
    ecfg.keep_intermediates = false;

    RoiRect roi{0, 0, frames.width, frames.height};
    if (cfg.contains("roi") && !cfg["roi"].is_null()) {
        const auto& r = cfg["roi"];
        if (!r.is_array() || r.size() != 4) throw InvalidInput("roi must be [x, y, w, h]");
        roi = {r[0].get<int>(), r[1].get<int>(), r[2].get<int>(), r[3].get<int>()};
    }
    ExtractResult result = extract_hr_from_frames(frames, ecfg, roi);
    write_result(result, out, m, false);
}

void exec_sweep(const json& cfg, const fs::path& out, RunManifest& m) {
    SweepConfig sweep;
    sweep.snr_db_list = cfg.at("snr_db_list").get<std::vector<double>>();
    sweep.n_trials = cfg.at("trials").get<int>();
    if (cfg.contains("hr_bpm") && !cfg["hr_bpm"].is_null())
        sweep.true_hr_bpm = cfg["hr_bpm"].get<double>();
    else
        sweep.true_hr_bpm.reset();
    sweep.tol_hz = cfg.value("tol_hz", 0.02);
    sweep.validity_bpm = cfg.value("validity_bpm", 10.0);
    sweep.master_seed = cfg.at("seed").get<std::uint64_t>();

    const json rj = cfg.value("recipe", json{});
    sweep.recipe.kind =
        rj.value("kind", "sinusoid") == "gi-chain" ? RecipeKind::GiChain : RecipeKind::Sinusoid;
    sweep.recipe.fs = rj.value("fs_hz", 30.0);
    sweep.recipe.duration_s = rj.value("duration_s", 12.0);
    sweep.recipe.width = rj.value("width", 16);
    sweep.recipe.height = rj.value("height", 16);
    sweep.recipe.pulse_depth = rj.value("pulse_depth", 0.03);
    sweep.recipe.base_diffuse = rj.value("base_diffuse", 1.0);
    sweep.recipe.specular_level = rj.value("specular_level", 0.1);
    sweep.recipe.pixel_noise_sigma = rj.value("pixel_noise_sigma", 0.0);
    sweep.recipe.detector_noise_sigma = rj.value("detector_noise_sigma", 0.0);
    sweep.recipe.speckle_kind = speckle_kind_from(rj.value("speckle_kind", "binary"));

    ExtractConfig ecfg;
    if (cfg.contains("band")) ecfg.band = band_from(cfg["band"]);
    ecfg.vmd = vmd_from(cfg.value("vmd", json{}));

    const int jobs = cfg.value("jobs", 1);
    SweepResult result = snr_sweep(sweep, ecfg, jobs);
    io::write_sweep_csv(out / "sweep.csv", result);
    std::ofstream js(out / "sweep.json");
    if (!js) throw IoError("cannot write sweep.json in " + out.string());
    js << io::sweep_json(result);
    m.outputs = {"sweep.csv", "sweep.json"};

    json summary = json::array();
    for (const auto& agg : result.per_snr)
        summary.push_back({{"snr_db", agg.snr_db}, {"success_rate", agg.success_rate}});
    m.metrics = {{"per_snr", summary}};
}

void exec_gi_chain(const json& cfg, const fs::path& out, RunManifest& m) {
    const std::string mode = cfg.at("mode").get<std::string>();
    const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();

    if (mode == "dgi") {
        const int n_patterns = cfg.value("patterns", 5000);
        Image object;
        if (cfg.contains("object") && !cfg["object"].is_null()) {
            const std::string path = cfg["object"].get<std::string>();
            m.inputs = {path};
            object = io::read_gifr_image(path);
        } else if (cfg.contains("object_mask") && !cfg["object_mask"].is_null()) {
            // built-in random binary mask as the imaged object
            const int w = cfg["object_mask"].value("width", 8);
            const int h = cfg["object_mask"].value("height", 8);
            if (w <= 0 || h <= 0) throw InvalidInput("gi-chain: bad object_mask size");
            object.width = w;
            object.height = h;
            object.data.resize(static_cast<std::size_t>(w) * h);
            std::mt19937_64 eng(derive_seed(seed, 101));
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            for (auto& v : object.data) v = uni(eng) < 0.5 ? 0.0 : 1.0;
            io::write_gifr(out / "object.gifr", object);
            m.outputs.push_back("object.gifr");
        } else {
            throw InvalidInput("gi-chain --mode dgi needs --object or --object-mask");
        }

        SpeckleConfig sp;
        sp.n_patterns = n_patterns;
        sp.width = object.width;
        sp.height = object.height;
        sp.kind = speckle_kind_from(cfg.value("speckle_kind", "binary"));
        sp.seed = derive_seed(seed, 102);
        SpeckleSequence speckles = gen_speckles(sp);

        FrameSequence frames;
        frames.width = object.width;
        frames.height = object.height;
        frames.fs = 1.0; // static object; the rate is irrelevant here
        frames.data.resize(object.data.size() * static_cast<std::size_t>(n_patterns));
        for (int t = 0; t < n_patterns; ++t)
            std::copy(object.data.begin(), object.data.end(),
                      frames.data.begin() + static_cast<std::size_t>(t) * object.data.size());

        BucketRecord rec = bucket_measure(speckles, frames,
                                          cfg.value("detector_noise_sigma", 0.0),
                                          derive_seed(seed, 103));
        const DgiFormula formula = cfg.value("formula", "canonical") == "literal"
                                       ? DgiFormula::Literal
                                       : DgiFormula::Canonical;
        Image recon = dgi_reconstruct(rec, speckles, formula);
        io::write_gifr(out / "recon.gifr", recon);
        m.outputs.push_back("recon.gifr");
        m.metrics = {{"correlation_to_truth", pearson(recon.data, object.data)},
                     {"patterns", n_patterns}};
        return;
    }

    if (mode != "hr") throw InvalidInput("gi-chain: mode must be 'dgi' or 'hr'");

    RppgConfig rppg;
    rppg.hr_bpm = cfg.at("hr_bpm").get<double>();
    rppg.fs = cfg.at("fs_hz").get<double>();
    rppg.duration_s = cfg.at("duration_s").get<double>();
    rppg.seed = derive_seed(seed, 201);
    TimeSeries wave = gen_rppg_waveform(rppg);

    SceneConfig scene = scene_from(cfg.value("scene", json{}));
    scene.pulse_depth = cfg.value("pulse_depth", scene.pulse_depth);
    scene.seed = derive_seed(seed, 202);
    FrameSequence frames = gen_skin_frames(scene, wave);

    SpeckleConfig sp;
    sp.n_patterns = static_cast<int>(frames.frame_count());
    sp.width = scene.width;
    sp.height = scene.height;
    sp.kind = speckle_kind_from(cfg.value("speckle_kind", "binary"));
    sp.seed = derive_seed(seed, 203);
    SpeckleSequence speckles = gen_speckles(sp);

    BucketRecord rec = bucket_measure(speckles, frames, cfg.value("detector_noise_sigma", 0.0),
                                      derive_seed(seed, 204));
    io::write_timeseries_csv(out / "bucket.csv", rec.bucket);
    io::write_timeseries_csv(out / "reference.csv", rec.reference);
    m.outputs = {"bucket.csv", "bucket.json", "reference.csv", "reference.json"};

    const bool normalize = cfg.value("normalize", true);
    TimeSeries signal = normalize ? normalize_bucket(rec) : rec.bucket;

    ExtractConfig ecfg;
    if (cfg.contains("band")) ecfg.band = band_from(cfg["band"]);
    ecfg.vmd = vmd_from(cfg.value("vmd", json{}));
    ecfg.normalize_by_reference = normalize;
    ecfg.keep_intermediates = cfg.value("keep_intermediates", false);
    ExtractResult result = extract_hr_from_bucket(signal, ecfg);
    write_result(result, out, m, ecfg.keep_intermediates);
    m.metrics = {{"hr_bpm", result.hr_bpm}, {"f_max_hz", result.f_max_hz}};
}

} // namespace

void exec_command(const std::string& name, const json& config, const fs::path& out_dir,
                  RunManifest& manifest) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec && !fs::is_directory(out_dir))
        throw IoError("cannot create output directory " + out_dir.string());

    manifest.subcommand = name;
    manifest.config = config;
    if (name == "synth")
        exec_synth(config, out_dir, manifest);
    else if (name == "speckles")
        exec_speckles(config, out_dir, manifest);
    else if (name == "bucket")
        exec_bucket(config, out_dir, manifest);
    else if (name == "dgi")
        exec_dgi(config, out_dir, manifest);
    else if (name == "extract")
        exec_extract(config, out_dir, manifest);
    else if (name == "extract-frames")
        exec_extract_frames(config, out_dir, manifest);
    else if (name == "sweep")
        exec_sweep(config, out_dir, manifest);
    else if (name == "gi-chain")
        exec_gi_chain(config, out_dir, manifest);
    else
        throw InvalidInput("unknown subcommand: " + name);
}

} // namespace gipulse::cli
