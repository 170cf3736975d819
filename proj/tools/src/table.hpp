#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace cli {

// %.17g: shortest text that round-trips any double exactly.
std::string fmt_g17(double v);
std::string fmt_int(long v);

// Streaming CSV writer with a fixed header. close() flushes and reports
// stream failures; forgetting it loses the error, so commands call it
// explicitly before writing the manifest.
class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    long rows() const { return rows_; }
    void close();

  private:
    std::ofstream out_;
    std::filesystem::path path_;
    std::size_t width_ = 0;
    long rows_ = 0;
};

// Everything the CLI writes is numeric, so the reader hands back doubles.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

Table read_csv(const std::filesystem::path& path);
int column_index(const Table& table, const std::string& name);

// FNV-1a over the file bytes; cheap, stable, good enough to pin an output
// file to its manifest.
std::uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string hex64(std::uint64_t v);

} // namespace cli
