#include "opflow/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#ifndef OPFLOW_VERSION
#define OPFLOW_VERSION "0.0.0"
#endif

namespace opflow {

namespace {

std::string hex(const unsigned char* data, unsigned int len) {
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(data[i]);
    return os.str();
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
        throw std::runtime_error("sha256: digest computation failed");
    }
    return hex(digest, len);
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("sha256: cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

std::string tool_version() { return OPFLOW_VERSION; }

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

void RunManifest::add_output(const std::filesystem::path& dir, const std::string& relative) {
    output_files.push_back({relative, sha256_file(dir / relative)});
}

std::string RunManifest::to_json(int indent) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["tool_version"] = tool_version;
    j["timestamp"] = timestamp;
    j["input_hashes"] = input_hashes;
    j["output_files"] = nlohmann::ordered_json::array();
    for (const OutputFile& f : output_files) j["output_files"].push_back({{"path", f.path}, {"sha256", f.sha256}});
    return j.dump(indent);
}

RunManifest RunManifest::from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
        m.tool_version = j.at("tool_version").get<std::string>();
        m.timestamp = j.at("timestamp").get<std::string>();
        m.input_hashes = j.at("input_hashes").get<std::map<std::string, std::string>>();
        for (const auto& f : j.at("output_files")) m.output_files.push_back({f.at("path"), f.at("sha256")});
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("manifest: ") + e.what());
    }
}

}  // namespace opflow
