#include "gipulse/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gipulse/errors.hpp"
#include "gipulse/version.hpp"

namespace gipulse::io {

using nlohmann::json;

std::string fmt_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = {}) {
    std::ofstream out(path, mode);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = {}) {
    std::ifstream in(path, mode);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    return in;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    p.replace_extension(".json");
    return p;
}

} // namespace

void write_timeseries_csv(const std::filesystem::path& csv_path, const TimeSeries& ts,
                          bool with_sidecar) {
    require_valid(ts, "write_timeseries_csv");
    auto out = open_out(csv_path);
    out << "t,value\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = static_cast<double>(i) / ts.fs;
        out << fmt_g9(t) << ',' << fmt_g9(ts.samples[i]) << '\n';
    }
    if (with_sidecar) {
        auto side = open_out(sidecar_path(csv_path));
        side << "{ \"spec_version\": " << kSpecVersion << ", \"fs_hz\": " << fmt_g9(ts.fs)
             << ", \"n\": " << ts.size() << " }\n";
    }
}

TimeSeries read_timeseries_csv(const std::filesystem::path& csv_path) {
    auto in = open_in(csv_path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty csv: " + csv_path.string());
    TimeSeries ts;
    std::vector<double> times;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw IoError("malformed csv row in " + csv_path.string());
        times.push_back(std::strtod(line.c_str(), nullptr));
        ts.samples.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
    }
    if (ts.samples.empty()) throw IoError("csv has no rows: " + csv_path.string());

    const auto side = sidecar_path(csv_path);
    if (std::filesystem::exists(side)) {
        json meta = json::parse(open_in(side));
        ts.fs = meta.at("fs_hz").get<double>();
    } else if (times.size() >= 2) {
        std::vector<double> deltas(times.size() - 1);
        for (std::size_t i = 0; i + 1 < times.size(); ++i) deltas[i] = times[i + 1] - times[i];
        std::nth_element(deltas.begin(), deltas.begin() + deltas.size() / 2, deltas.end());
        const double dt = deltas[deltas.size() / 2];
        if (!(dt > 0.0)) throw IoError("cannot infer fs from t column: " + csv_path.string());
        ts.fs = 1.0 / dt;
    } else {
        throw IoError("single-row csv without fs sidecar: " + csv_path.string());
    }
    if (!(ts.fs > 0.0)) throw IoError("nonpositive fs for " + csv_path.string());
    return ts;
}

namespace {

void write_gifr_raw(const std::filesystem::path& path, int width, int height,
                    std::size_t n_frames, double fs, const std::vector<double>& data) {
    if (width <= 0 || height <= 0 || n_frames == 0)
        throw InvalidInput("write_gifr: empty stack");
    if (data.size() != static_cast<std::size_t>(width) * height * n_frames)
        throw InvalidInput("write_gifr: data size does not match header");
    auto out = open_out(path, std::ios::binary);
    out << "{\"magic\":\"GIFR\",\"version\":1,\"width\":" << width << ",\"height\":" << height
        << ",\"frames\":" << n_frames << ",\"fs_hz\":" << fmt_g9(fs)
        << ",\"dtype\":\"f32le\"}\n";
    std::vector<float> payload(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) payload[i] = static_cast<float>(data[i]);
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(float)));
    if (!out) throw IoError("short write: " + path.string());
}

struct GifrRaw {
    int width = 0, height = 0;
    std::size_t frames = 0;
    double fs = 0.0;
    std::vector<double> data;
};

GifrRaw read_gifr_raw(const std::filesystem::path& path) {
    auto in = open_in(path, std::ios::binary);
    std::string header;
    if (!std::getline(in, header)) throw IoError("missing GIFR header: " + path.string());
    json h = json::parse(header, nullptr, false);
    if (h.is_discarded() || h.value("magic", "") != "GIFR")
        throw IoError("not a GIFR file: " + path.string());
    if (h.value("version", 0) != 1)
        throw IoError("unsupported GIFR version in " + path.string());
    if (h.value("dtype", "") != "f32le")
        throw IoError("unsupported GIFR dtype in " + path.string());
    GifrRaw raw;
    raw.width = h.at("width").get<int>();
    raw.height = h.at("height").get<int>();
    raw.frames = h.at("frames").get<std::size_t>();
    raw.fs = h.at("fs_hz").get<double>();
    if (raw.width <= 0 || raw.height <= 0 || raw.frames == 0)
        throw IoError("degenerate GIFR dimensions in " + path.string());
    const std::size_t count = static_cast<std::size_t>(raw.width) * raw.height * raw.frames;
    std::vector<float> payload(count);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(count * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(float))
        throw IoError("truncated GIFR payload: " + path.string());
    raw.data.assign(payload.begin(), payload.end());
    return raw;
}

} // namespace

void write_gifr(const std::filesystem::path& path, const FrameSequence& frames) {
    write_gifr_raw(path, frames.width, frames.height, frames.frame_count(), frames.fs,
                   frames.data);
}

void write_gifr(const std::filesystem::path& path, const SpeckleSequence& speckles) {
    write_gifr_raw(path, speckles.width, speckles.height, speckles.pattern_count(), 0.0,
                   speckles.data);
}

void write_gifr(const std::filesystem::path& path, const Image& image) {
    write_gifr_raw(path, image.width, image.height, 1, 0.0, image.data);
}

FrameSequence read_gifr_frames(const std::filesystem::path& path) {
    GifrRaw raw = read_gifr_raw(path);
    FrameSequence out;
    out.width = raw.width;
    out.height = raw.height;
    out.fs = raw.fs;
    out.data = std::move(raw.data);
    return out;
}

SpeckleSequence read_gifr_speckles(const std::filesystem::path& path) {
    GifrRaw raw = read_gifr_raw(path);
    SpeckleSequence out;
    out.width = raw.width;
    out.height = raw.height;
    out.data = std::move(raw.data);
    return out;
}

Image read_gifr_image(const std::filesystem::path& path) {
    GifrRaw raw = read_gifr_raw(path);
    if (raw.frames != 1) throw IoError("expected single-frame GIFR: " + path.string());
    Image out;
    out.width = raw.width;
    out.height = raw.height;
    out.data = std::move(raw.data);
    return out;
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spectrum) {
    auto out = open_out(path);
    out << "freq_hz,magnitude\n";
    for (std::size_t i = 0; i < spectrum.freqs_hz.size(); ++i)
        out << fmt_g9(spectrum.freqs_hz[i]) << ',' << fmt_g9(spectrum.mags[i]) << '\n';
}

void write_modes_csv(const std::filesystem::path& path, const VmdResult& result) {
    if (result.modes.empty()) throw InvalidInput("write_modes_csv: no modes");
    auto out = open_out(path);
    out << "t";
    for (std::size_t k = 0; k < result.modes.size(); ++k) out << ",mode_" << (k + 1);
    out << '\n';
    const TimeSeries& first = result.modes.front();
    for (std::size_t i = 0; i < first.size(); ++i) {
        out << fmt_g9(static_cast<double>(i) / first.fs);
        for (const TimeSeries& m : result.modes) out << ',' << fmt_g9(m.samples[i]);
        out << '\n';
    }
}

void write_pair_csv(const std::filesystem::path& path, const TimeSeries& a, const TimeSeries& b,
                    const std::string& a_name, const std::string& b_name) {
    if (a.size() != b.size()) throw InvalidInput("write_pair_csv: length mismatch");
    auto out = open_out(path);
    out << "t," << a_name << ',' << b_name << '\n';
    for (std::size_t i = 0; i < a.size(); ++i)
        out << fmt_g9(static_cast<double>(i) / a.fs) << ',' << fmt_g9(a.samples[i]) << ','
            << fmt_g9(b.samples[i]) << '\n';
}

std::string extract_result_json(const ExtractResult& result,
                                const std::filesystem::path& out_dir) {
    json doc;
    doc["spec_version"] = kSpecVersion;
    doc["hr_bpm"] = result.hr_bpm;
    doc["f_max_hz"] = result.f_max_hz;
    doc["out_of_band"] = result.out_of_band;
    if (result.intermediates) {
        const ExtractIntermediates& inter = *result.intermediates;
        json meta;
        meta["selected_imf_index"] = inter.selected_index;
        meta["vmd_center_freqs_hz"] = inter.vmd.center_freqs_hz;
        meta["vmd_iterations"] = inter.vmd.iterations;
        meta["vmd_converged"] = inter.vmd.converged;
        if (!out_dir.empty()) {
            // stage artifacts, one file per pipeline panel
            write_timeseries_csv(out_dir / "01_detrended.csv", inter.detrended);
            write_timeseries_csv(out_dir / "02_autocorrelation.csv", inter.autocorr);
            if (!inter.vmd.modes.empty())
                write_modes_csv(out_dir / "03_vmd_modes.csv", inter.vmd);
            write_pair_csv(out_dir / "04_filtered_imf.csv", inter.selected_imf,
                           inter.filtered_imf, "selected", "filtered");
            write_timeseries_csv(out_dir / "05_cross_correlation.csv", inter.cross_corr);
            write_spectrum_csv(out_dir / "06_spectrum.csv", inter.spectrum);
            meta["paths"] = {
                {"detrended", "01_detrended.csv"},
                {"autocorrelation", "02_autocorrelation.csv"},
                {"vmd_modes", "03_vmd_modes.csv"},
                {"filtered_imf", "04_filtered_imf.csv"},
                {"cross_correlation", "05_cross_correlation.csv"},
                {"spectrum", "06_spectrum.csv"},
            };
        }
        doc["intermediates"] = meta;
    }
    return doc.dump(2) + "\n";
}

namespace {

json trial_json(const TrialOutcome& t) {
    return json{{"seed", t.seed},
                {"true_hr_bpm", t.true_hr_bpm},
                {"est_hr_bpm", t.est_hr_bpm},
                {"f_true_hz", t.f_true_hz},
                {"f_est_hz", t.f_est_hz},
                {"success", t.success},
                {"valid", t.valid},
                {"out_of_band", t.out_of_band}};
}

} // namespace

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result) {
    auto out = open_out(path);
    out << "snr_db,trial,seed,true_hr,est_hr,f_true,f_est,success,valid\n";
    const int n_trials = result.config.n_trials;
    for (std::size_t i = 0; i < result.trials.size(); ++i) {
        const TrialOutcome& t = result.trials[i];
        const std::size_t si = i / n_trials;
        out << fmt_g9(result.config.snr_db_list[si]) << ',' << (i % n_trials) << ',' << t.seed
            << ',' << fmt_g9(t.true_hr_bpm) << ',' << fmt_g9(t.est_hr_bpm) << ','
            << fmt_g9(t.f_true_hz) << ',' << fmt_g9(t.f_est_hz) << ',' << (t.success ? 1 : 0)
            << ',' << (t.valid ? 1 : 0) << '\n';
    }
}

std::string sweep_json(const SweepResult& result) {
    const SweepConfig& cfg = result.config;
    json conf;
    conf["snr_db_list"] = cfg.snr_db_list;
    conf["n_trials"] = cfg.n_trials;
    if (cfg.true_hr_bpm)
        conf["true_hr_bpm"] = *cfg.true_hr_bpm;
    else
        conf["true_hr_bpm"] = nullptr;
    conf["recipe"] = cfg.recipe.kind == RecipeKind::Sinusoid ? "sinusoid" : "gi-chain";
    conf["fs_hz"] = cfg.recipe.fs;
    conf["duration_s"] = cfg.recipe.duration_s;
    conf["tol_hz"] = cfg.tol_hz;
    conf["validity_bpm"] = cfg.validity_bpm;
    conf["master_seed"] = cfg.master_seed;

    json per_snr = json::array();
    for (const SnrAggregate& a : result.per_snr) {
        json row;
        row["snr_db"] = a.snr_db;
        row["n_success"] = a.n_success;
        row["n_valid"] = a.n_valid;
        row["success_rate"] = a.success_rate;
        if (a.mae_bpm)
            row["mae_bpm"] = *a.mae_bpm;
        else
            row["mae_bpm"] = nullptr;
        per_snr.push_back(row);
    }
    json trials = json::array();
    for (const TrialOutcome& t : result.trials) trials.push_back(trial_json(t));

    json doc;
    doc["spec_version"] = kSpecVersion;
    doc["config"] = conf;
    doc["per_snr"] = per_snr;
    doc["trials"] = trials;
    return doc.dump(2) + "\n";
}

} // namespace gipulse::io
