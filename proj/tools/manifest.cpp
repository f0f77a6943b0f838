#include "manifest.hpp"

#include <fstream>

#include "gipulse/errors.hpp"
#include "gipulse/version.hpp"

namespace gipulse::cli {

using nlohmann::json;

json RunManifest::to_json() const {
    json doc;
    doc["spec_version"] = kSpecVersion;
    doc["tool"] = "gipulse";
    doc["tool_version"] = kVersion;
    doc["subcommand"] = subcommand;
    doc["config"] = config;
    doc["inputs"] = inputs;
    doc["outputs"] = outputs;
    if (!metrics.is_null()) doc["metrics"] = metrics;
    doc["duration_s"] = duration_s;
    return doc;
}

RunManifest RunManifest::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path.string());
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw IoError("malformed manifest: " + path.string());
    RunManifest m;
    m.subcommand = doc.at("subcommand").get<std::string>();
    m.config = doc.at("config");
    if (doc.contains("inputs")) m.inputs = doc["inputs"].get<std::vector<std::string>>();
    return m;
}

void RunManifest::write(const std::filesystem::path& out_dir) const {
    std::ofstream out(out_dir / "manifest.json");
    if (!out) throw IoError("cannot write manifest in " + out_dir.string());
    out << to_json().dump(2) << "\n";
}

} // namespace gipulse::cli
