#pragma once

// Run manifests: what was run, with which parameters, and content hashes of
// every emitted file.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace opflow {

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

std::string tool_version();

/// Current UTC time, ISO 8601 with seconds.
std::string utc_timestamp();

struct OutputFile {
    std::string path;  ///< relative to the output directory
    std::string sha256;
};

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string tool_version;
    std::string timestamp;
    std::map<std::string, std::string> input_hashes;
    std::vector<OutputFile> output_files;

    /// Hashes `dir / relative` and records it.
    void add_output(const std::filesystem::path& dir, const std::string& relative);

    std::string to_json(int indent = 2) const;
    /// Throws std::runtime_error on malformed input.
    static RunManifest from_json(const std::string& text);
};

}  // namespace opflow
