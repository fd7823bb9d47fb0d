// Reading value files and writing run outputs.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace ssmt::cli {

// One real per line. Blank lines and lines starting with '#' are skipped, and the
// first content line may be a column header (a word such as "x" or "value").
// Throws InvalidDataError naming the offending line.
std::vector<double> read_values(const std::string& path);
std::vector<double> parse_values(const std::string& text, const std::string& source);

// An output directory that refuses to overwrite unless forced.
class OutputDir {
public:
    OutputDir(std::filesystem::path root, bool force);

    const std::filesystem::path& root() const noexcept { return root_; }
    std::filesystem::path path(const std::string& name) const { return root_ / name; }

    void write(const std::string& name, const std::string& content);
    // Writes manifest.json: the config echo plus version and the list of files written.
    void write_manifest(nlohmann::json config);

    const std::vector<std::string>& written() const noexcept { return written_; }

private:
    std::filesystem::path root_;
    bool force_;
    std::vector<std::string> written_;
};

}  // namespace ssmt::cli
