#ifndef GIPULSE_TOOLS_MANIFEST_HPP
#define GIPULSE_TOOLS_MANIFEST_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace gipulse::cli {

/// One manifest.json per run: the resolved configuration plus enough
/// bookkeeping to reproduce the outputs bit-exactly with `replay`.
struct RunManifest {
    std::string subcommand;
    nlohmann::json config;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    nlohmann::json metrics; // optional extras (e.g. reconstruction quality)
    double duration_s = 0.0;

    nlohmann::json to_json() const;
    static RunManifest from_file(const std::filesystem::path& path);
    void write(const std::filesystem::path& out_dir) const;
};

} // namespace gipulse::cli

#endif
