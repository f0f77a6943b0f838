#ifndef GIPULSE_IO_HPP
#define GIPULSE_IO_HPP

#include <filesystem>
#include <string>

#include "gipulse/eval.hpp"
#include "gipulse/gi.hpp"
#include "gipulse/hr_extract.hpp"
#include "gipulse/synth.hpp"
#include "gipulse/time_series.hpp"
#include "gipulse/vmd.hpp"

namespace gipulse::io {

// TimeSeries CSV: header "t,value", one row per sample, both columns with
// 9 significant digits. A sidecar "<stem>.json" alongside carries
// {"fs_hz": <number>, "n": <integer>}; on read, fs comes from the sidecar
// when present and is otherwise inferred from the median t delta.
void write_timeseries_csv(const std::filesystem::path& csv_path, const TimeSeries& ts,
                          bool with_sidecar = true);
TimeSeries read_timeseries_csv(const std::filesystem::path& csv_path);

// GIFR v1 container: one JSON header line
//   {"magic":"GIFR","version":1,"width":W,"height":H,"frames":F,"fs_hz":R,"dtype":"f32le"}
// followed by W*H*F little-endian 32-bit floats, frame-major, row-major
// within each frame. Speckle stacks use fs_hz = 0, single images frames = 1.
void write_gifr(const std::filesystem::path& path, const FrameSequence& frames);
void write_gifr(const std::filesystem::path& path, const SpeckleSequence& speckles);
void write_gifr(const std::filesystem::path& path, const Image& image);
FrameSequence read_gifr_frames(const std::filesystem::path& path);
SpeckleSequence read_gifr_speckles(const std::filesystem::path& path);
Image read_gifr_image(const std::filesystem::path& path);

// Spectrum CSV: header "freq_hz,magnitude".
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spectrum);

// VMD modes CSV: header "t,mode_1,...,mode_K".
void write_modes_csv(const std::filesystem::path& path, const VmdResult& result);

// Two-column CSV "t,<a_name>,<b_name>" for paired series of equal length.
void write_pair_csv(const std::filesystem::path& path, const TimeSeries& a,
                    const TimeSeries& b, const std::string& a_name, const std::string& b_name);

/// ExtractResult as JSON; when intermediates were kept and out_dir is
/// nonempty, writes the stage CSVs 01_detrended.csv .. 06_spectrum.csv
/// there and records their paths in the JSON. Returns the JSON text.
std::string extract_result_json(const ExtractResult& result,
                                const std::filesystem::path& out_dir = {});

// Sweep outputs: flat per-trial CSV
//   snr_db,trial,seed,true_hr,est_hr,f_true,f_est,success,valid
// and a JSON document with config, per-SNR aggregates and all trials.
void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result);
std::string sweep_json(const SweepResult& result);

/// Format a double with 9 significant digits (all file formats use this).
std::string fmt_g9(double v);

} // namespace gipulse::io

#endif
