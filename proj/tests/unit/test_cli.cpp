#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "opflow/cli.hpp"
#include "opflow/manifest.hpp"

using namespace opflow;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("opflow_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "manifest.json")); }

}  // namespace

TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("manifest round trip") {
    RunManifest m;
    m.command = "specflow";
    m.parameters = {{"samples", "64"}, {"path", "robin"}};
    m.tool_version = tool_version();
    m.timestamp = utc_timestamp();
    m.input_hashes = {{"cfg.txt", sha256_hex("x")}};
    m.output_files = {{"specflow.json", sha256_hex("{}")}};
    const RunManifest back = RunManifest::from_json(m.to_json());
    CHECK(back.command == m.command);
    CHECK(back.parameters == m.parameters);
    CHECK(back.timestamp == m.timestamp);
    CHECK(back.input_hashes == m.input_hashes);
    REQUIRE(back.output_files.size() == 1);
    CHECK(back.output_files[0].sha256 == m.output_files[0].sha256);
    CHECK_THROWS(RunManifest::from_json("{\"command\": 3}"));
    CHECK_THROWS(RunManifest::from_json("not json"));
}

TEST_CASE("flat config parsing") {
    const auto kv = parse_flat_config("# comment\nsamples = 32\n--grid=200  # trailing\n\n");
    REQUIRE(kv.size() == 2);
    CHECK(kv[0] == std::pair<std::string, std::string>{"samples", "32"});
    CHECK(kv[1] == std::pair<std::string, std::string>{"grid", "200"});
    CHECK_THROWS(parse_flat_config("no equals sign"));
}

TEST_CASE("specgraph output is deterministic and hashed") {
    const fs::path a = scratch("sg_a"), b = scratch("sg_b");
    const Run r1 = run({"--out", a.string(), "specgraph", "--samples", "32", "--grid", "200"});
    const Run r2 = run({"specgraph", "--grid", "200", "--samples", "32", "--out", b.string()});
    REQUIRE(r1.code == kExitOk);
    REQUIRE(r2.code == kExitOk);
    const std::string csv = slurp(a / "specgraph.csv");
    CHECK(csv == slurp(b / "specgraph.csv"));
    CHECK(csv.rfind("theta,branch_index,lambda\n", 0) == 0);

    const auto m = manifest(a);
    CHECK(m.at("command") == "specgraph");
    CHECK(m.at("parameters").at("samples") == "32");
    CHECK(m.at("parameters").at("window") == "50");
    REQUIRE(m.at("output_files").size() == 1);
    CHECK(m.at("output_files")[0].at("path") == "specgraph.csv");
    CHECK(m.at("output_files")[0].at("sha256") == sha256_file(a / "specgraph.csv"));
    CHECK(m.contains("tool_version"));
    CHECK(m.contains("timestamp"));
    CHECK(m.contains("input_hashes"));
}

TEST_CASE("usage errors exit with 2") {
    const fs::path d = scratch("usage");
    CHECK(run({"--out", d.string(), "specgraph", "--samples", "4"}).code == kExitUsage);
    CHECK(run({"--out", d.string(), "nonsense"}).code == kExitUsage);
    CHECK(run({"--out", d.string()}).code == kExitUsage);
    CHECK(run({"--out", d.string(), "specflow", "--path", "elsewhere"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("specflow builtins") {
    const fs::path d = scratch("sf");
    for (auto [path, flow] : {std::pair{"const", 0}, std::pair{"cross", 1}}) {
        REQUIRE(run({"--out", d.string(), "specflow", "--path", path, "--samples", "16"}).code == kExitOk);
        CHECK(nlohmann::json::parse(slurp(d / "specflow.json")).at("flow") == flow);
    }
    REQUIRE(run({"--out", d.string(), "specflow", "--grid", "200", "--samples", "32"}).code == kExitOk);
    const auto j = nlohmann::json::parse(slurp(d / "specflow.json"));
    CHECK(j.at("flow") == 1);
    CHECK(j.contains("partition"));
    CHECK(j.contains("crossings"));
}

TEST_CASE("dichotomy csv") {
    const fs::path d = scratch("dich");
    REQUIRE(run({"--out", d.string(), "dichotomy", "--grid", "64", "--points", "3"}).code == kExitOk);
    const std::string csv = slurp(d / "dichotomy.csv");
    CHECK(csv.rfind("x1,riesz_lower_bound,gap_dist\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("identities exit codes") {
    const fs::path d = scratch("ident");
    CHECK(run({"--out", d.string(), "identities", "--trials", "40"}).code == kExitOk);
    const auto j = nlohmann::json::parse(slurp(d / "identities.json"));
    CHECK(j.at("passed") == true);
    CHECK(run({"--out", d.string(), "identities", "--trials", "40", "--tolerance", "1e-30"}).code == kExitCheckFailed);
}

TEST_CASE("identities are deterministic per seed") {
    const fs::path a = scratch("seed_a"), b = scratch("seed_b"), c = scratch("seed_c");
    run({"--out", a.string(), "--seed", "7", "identities", "--trials", "20"});
    run({"--out", b.string(), "--seed", "7", "identities", "--trials", "20"});
    run({"--out", c.string(), "--seed", "8", "identities", "--trials", "20"});
    CHECK(slurp(a / "identities.json") == slurp(b / "identities.json"));
    CHECK(slurp(a / "identities.json") != slurp(c / "identities.json"));
}

TEST_CASE("surgery csv") {
    const fs::path d = scratch("surgery");
    REQUIRE(run({"--out", d.string(), "surgery", "--trials", "5", "--eps", "0.5,0.1"}).code == kExitOk);
    const std::string csv = slurp(d / "surgery.csv");
    CHECK(csv.rfind("epsilon,c,cayley_change\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
}

TEST_CASE("config presets flags that the command line leaves open") {
    const fs::path d = scratch("config");
    fs::create_directories(d);
    const fs::path cfg = d / "opflow.cfg";
    std::ofstream(cfg) << "samples = 20\ngrid = 120\n";
    REQUIRE(run({"--config", cfg.string(), "--out", d.string(), "specgraph", "--grid", "100"}).code == kExitOk);
    const auto m = manifest(d);
    CHECK(m.at("parameters").at("samples") == "20");
    CHECK(m.at("parameters").at("grid") == "100");
    CHECK(m.at("input_hashes").at(cfg.string()) == sha256_file(cfg));

    const fs::path d2 = scratch("config_env");
    setenv("OPFLOW_CONFIG", cfg.string().c_str(), 1);
    const Run r = run({"--out", d2.string(), "specgraph"});
    unsetenv("OPFLOW_CONFIG");
    REQUIRE(r.code == kExitOk);
    CHECK(manifest(d2).at("parameters").at("grid") == "120");

    CHECK(run({"--config", (d / "missing.cfg").string(), "--out", d.string(), "specgraph"}).code == kExitUsage);
}
