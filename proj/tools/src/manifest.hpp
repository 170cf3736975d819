#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace cli {

// Sidecar run record: <data>.csv gets <data>.manifest.json next to it,
// carrying the command, the fully resolved parameters, the artifact version,
// the wall time, and a digest of the data file it describes.
void write_manifest(const std::filesystem::path& data_path, const std::string& command,
                    const nlohmann::json& params, double wall_seconds, long rows);

} // namespace cli
