#include "manifest.hpp"

#include <fstream>
#include <stdexcept>

#include <kicktop/version.hpp>

#include "table.hpp"

namespace cli {

void write_manifest(const std::filesystem::path& data_path, const std::string& command,
                    const nlohmann::json& params, double wall_seconds, long rows) {
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["params"] = params;
    manifest["version"] = kicktop::version();
    manifest["wall_seconds"] = wall_seconds;
    manifest["output"] = {
        {"file", data_path.filename().string()},
        {"fnv1a64", hex64(fnv1a64_file(data_path))},
        {"rows", rows},
    };

    std::filesystem::path out = data_path;
    out.replace_extension();
    out += ".manifest.json";
    std::ofstream f(out);
    if (!f)
        throw std::runtime_error("cannot open " + out.string() + " for writing");
    f << manifest.dump(2) << '\n';
    if (!f)
        throw std::runtime_error("write failed for " + out.string());
}

} // namespace cli
