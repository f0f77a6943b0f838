#ifndef GIPULSE_TOOLS_COMMANDS_HPP
#define GIPULSE_TOOLS_COMMANDS_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "manifest.hpp"

namespace gipulse::cli {

/// Execute a subcommand from its canonical JSON configuration, writing all
/// outputs into out_dir. Fills the manifest's inputs/outputs/metrics.
/// Every subcommand is a pure function of (config, referenced input files).
void exec_command(const std::string& name, const nlohmann::json& config,
                  const std::filesystem::path& out_dir, RunManifest& manifest);

} // namespace gipulse::cli

#endif
