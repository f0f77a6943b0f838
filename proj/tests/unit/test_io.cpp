#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include <json.hpp>

#include "gipulse/errors.hpp"
#include "gipulse/io.hpp"
#include "test_util.hpp"

using namespace gipulse;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("gipulse_io_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("timeseries csv round trip with sidecar") {
    TempDir tmp;
    auto ts = testutil::sine(1.25, 30.0, 8.0, 0.7, 0.2, 1.5);
    const auto csv = tmp.path / "sig.csv";
    io::write_timeseries_csv(csv, ts);
    CHECK(fs::exists(tmp.path / "sig.json"));

    auto back = io::read_timeseries_csv(csv);
    CHECK(back.fs == 30.0);
    REQUIRE(back.size() == ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        CHECK(back.samples[i] == doctest::Approx(ts.samples[i]).epsilon(1e-8));

    SUBCASE("fs inferred from the t column when the sidecar is gone") {
        fs::remove(tmp.path / "sig.json");
        auto inferred = io::read_timeseries_csv(csv);
        CHECK(inferred.fs == doctest::Approx(30.0).epsilon(1e-6));
    }
}

TEST_CASE("timeseries csv header and formatting") {
    TempDir tmp;
    TimeSeries ts{{0.123456789123, -2.0, 3.5e-7}, 10.0};
    const auto csv = tmp.path / "fmt.csv";
    io::write_timeseries_csv(csv, ts);
    const std::string text = slurp(csv);
    CHECK(text.rfind("t,value\n", 0) == 0);
    CHECK(text.find("0.123456789") != std::string::npos); // 9 significant digits
    CHECK(text.find("3.5e-07") != std::string::npos);
}

TEST_CASE("gifr container round trips frames, speckles and images") {
    TempDir tmp;

    FrameSequence frames;
    frames.width = 3;
    frames.height = 2;
    frames.fs = 24.0;
    frames.data = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}; // 2 frames
    const auto fpath = tmp.path / "frames.gifr";
    io::write_gifr(fpath, frames);
    auto fback = io::read_gifr_frames(fpath);
    CHECK(fback.width == 3);
    CHECK(fback.height == 2);
    CHECK(fback.fs == 24.0);
    CHECK(fback.frame_count() == 2);
    CHECK(fback.data == frames.data);

    const std::string header = slurp(fpath).substr(0, slurp(fpath).find('\n'));
    auto h = nlohmann::json::parse(header);
    CHECK(h["magic"] == "GIFR");
    CHECK(h["version"] == 1);
    CHECK(h["dtype"] == "f32le");
    CHECK(h["frames"] == 2);

    SpeckleSequence sp;
    sp.width = 2;
    sp.height = 2;
    sp.data = {1, 0, 0, 1, 0.5, 0.25, 0.125, 1};
    const auto spath = tmp.path / "speckles.gifr";
    io::write_gifr(spath, sp);
    auto sback = io::read_gifr_speckles(spath);
    CHECK(sback.pattern_count() == 2);
    CHECK(sback.data == sp.data);

    Image img;
    img.width = 2;
    img.height = 2;
    img.data = {-1.0, 0.5, 0.25, 2.0};
    const auto ipath = tmp.path / "image.gifr";
    io::write_gifr(ipath, img);
    auto iback = io::read_gifr_image(ipath);
    CHECK(iback.data == img.data);
    CHECK_THROWS_AS(io::read_gifr_image(fpath), IoError); // frames != 1
}

TEST_CASE("gifr rejects junk") {
    TempDir tmp;
    const auto bad = tmp.path / "bad.gifr";
    std::ofstream(bad) << "{\"magic\":\"NOPE\"}\n";
    CHECK_THROWS_AS(io::read_gifr_frames(bad), IoError);
    CHECK_THROWS_AS(io::read_gifr_frames(tmp.path / "missing.gifr"), IoError);

    // truncated payload
    const auto trunc = tmp.path / "trunc.gifr";
    std::ofstream(trunc)
        << "{\"magic\":\"GIFR\",\"version\":1,\"width\":4,\"height\":4,\"frames\":2,"
           "\"fs_hz\":30,\"dtype\":\"f32le\"}\n"
        << "only a few bytes";
    CHECK_THROWS_AS(io::read_gifr_frames(trunc), IoError);
}

TEST_CASE("extract result json carries the pipeline fields and artifacts") {
    TempDir tmp;
    auto b = testutil::sine(1.25, 30.0, 12.0);
    ExtractConfig cfg;
    cfg.keep_intermediates = true;
    auto res = extract_hr_from_bucket(b, cfg);
    const std::string text = io::extract_result_json(res, tmp.path);
    auto doc = nlohmann::json::parse(text);
    CHECK(doc["spec_version"] == 1);
    CHECK(doc["hr_bpm"].get<double>() == doctest::Approx(60.0 * doc["f_max_hz"].get<double>()));
    CHECK(doc["out_of_band"] == false);
    for (const char* name :
         {"01_detrended.csv", "02_autocorrelation.csv", "03_vmd_modes.csv",
          "04_filtered_imf.csv", "05_cross_correlation.csv", "06_spectrum.csv"})
        CHECK(fs::exists(tmp.path / name));

    // stage artifacts parse back as time series
    auto stage = io::read_timeseries_csv(tmp.path / "02_autocorrelation.csv");
    CHECK(stage.size() == b.size());
}

TEST_CASE("sweep csv and json are stable and complete") {
    TempDir tmp;
    SweepConfig cfg;
    cfg.snr_db_list = {10.0, -12.0};
    cfg.n_trials = 8;
    cfg.true_hr_bpm = 75.0;
    cfg.master_seed = 31;
    ExtractConfig ecfg;
    auto result = snr_sweep(cfg, ecfg);

    const auto csv = tmp.path / "sweep.csv";
    io::write_sweep_csv(csv, result);
    const std::string text = slurp(csv);
    CHECK(text.rfind("snr_db,trial,seed,true_hr,est_hr,f_true,f_est,success,valid\n", 0) == 0);
    // header + one row per trial
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 16);

    io::write_sweep_csv(tmp.path / "sweep2.csv", result);
    CHECK(slurp(csv) == slurp(tmp.path / "sweep2.csv")); // byte-stable

    auto doc = nlohmann::json::parse(io::sweep_json(result));
    CHECK(doc["spec_version"] == 1);
    CHECK(doc["per_snr"].size() == 2);
    CHECK(doc["trials"].size() == 16);
    CHECK(doc["config"]["master_seed"] == 31);
}

TEST_CASE("fmt_g9 gives nine significant digits") {
    CHECK(io::fmt_g9(0.1234567891234) == "0.123456789");
    CHECK(io::fmt_g9(1.0) == "1");
    CHECK(io::fmt_g9(-2.5e-9) == "-2.5e-09");
}
