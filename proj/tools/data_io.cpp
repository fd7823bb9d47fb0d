#include "data_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "ssmt/error.hpp"

namespace ssmt::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool looks_like_header(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    std::string lower;
    for (const char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return lower != "nan" && lower != "inf" && lower != "infinity";
}

}  // namespace

std::vector<double> parse_values(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        double v = 0.0;
        const char* first = s.data();
        const char* last = s.data() + s.size();
        if (*first == '+') ++first;
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last) {
            if (!seen_content && looks_like_header(s)) {
                seen_content = true;
                continue;
            }
            throw InvalidDataError(source + ":" + std::to_string(lineno) + ": cannot parse '" + s + "' as a number");
        }
        if (!std::isfinite(v)) {
            throw InvalidDataError(source + ":" + std::to_string(lineno) + ": value is not finite");
        }
        seen_content = true;
        values.push_back(v);
    }
    return values;
}

std::vector<double> read_values(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_values(buf.str(), path);
}

OutputDir::OutputDir(std::filesystem::path root, bool force) : root_(std::move(root)), force_(force) {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec) throw ParameterError("cannot create output directory '" + root_.string() + "': " + ec.message());
    if (!force_ && std::filesystem::exists(root_ / "manifest.json")) {
        throw ParameterError("output directory '" + root_.string() + "' already holds a run; pass --force to overwrite");
    }
}

void OutputDir::write(const std::string& name, const std::string& content) {
    const auto p = path(name);
    if (!force_ && std::filesystem::exists(p)) {
        throw ParameterError("refusing to overwrite '" + p.string() + "'; pass --force");
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw ParameterError("cannot write '" + p.string() + "'");
    out << content;
    if (!out) throw ParameterError("write failed for '" + p.string() + "'");
    written_.push_back(name);
}

void OutputDir::write_manifest(nlohmann::json config) {
    config["version"] = kVersion;
    config["outputs"] = written_;
    // The manifest is rewritten on every run into a forced directory.
    const auto p = path("manifest.json");
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw ParameterError("cannot write '" + p.string() + "'");
    out << config.dump(2) << '\n';
}

}  // namespace ssmt::cli
