#include "opflow/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "opflow/manifest.hpp"
#include "opflow/specflow.hpp"
#include "opflow/sturm.hpp"
#include "opflow/suites.hpp"

namespace opflow {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct GlobalFlags {
    std::string out = ".";
    std::uint64_t seed = 20240611;
    std::string config;
};

struct SpecgraphFlags {
    Index samples = 128;
    Index grid = 800;
    double window = kDefaultSpectralWindow;
};

struct SpecflowFlags {
    std::string path = "robin";
    Index samples = 64;
    Index grid = 800;
    double window = kDefaultFlowWindow;
    Index max_depth = kDefaultFlowDepth;
};

struct DichotomyFlags {
    Index grid = 400;
    Index points = 9;
    double x1_min = 1e-4;
    double x1_max = 0.9;
};

struct IdentitiesFlags {
    Index dim = 16;
    Index trials = 500;
    double tolerance = 1e-9;
};

struct HomotopyFlags {
    std::vector<Index> grids{128, 256, 512};
    double injectivity = 1e-8;
    double u1_tolerance = 1e-9;
};

struct SurgeryFlags {
    Index trials = 100;
    std::vector<double> eps{0.5, 0.1, 0.02};
    Index dim = 12;
};

class Session {
  public:
    Session(const GlobalFlags& g, CLI::App* sub, std::ostream& out, std::ostream& err)
        : g_(g), out_(out), err_(err) {
        std::error_code ec;
        fs::create_directories(g_.out, ec);
        if (ec || !fs::is_directory(g_.out)) throw UsageError("cannot create output directory " + g_.out);
        manifest_.command = sub->get_name();
        manifest_.tool_version = tool_version();
        manifest_.timestamp = utc_timestamp();
        manifest_.parameters["out"] = g_.out;
        manifest_.parameters["seed"] = std::to_string(g_.seed);
        for (const CLI::Option* opt : sub->get_options()) {
            if (opt->get_name().empty() || opt->get_name() == "--help") continue;
            std::string value;
            if (opt->count() > 0) {
                for (const std::string& r : opt->results()) value += (value.empty() ? "" : ",") + r;
            } else {
                value = opt->get_default_str();
            }
            std::string key = opt->get_name();
            key.erase(0, key.find_first_not_of('-'));
            manifest_.parameters[key] = value;
        }
        if (!g_.config.empty()) manifest_.input_hashes[g_.config] = sha256_file(g_.config);
    }

    void write(const std::string& name, const std::string& content) {
        const fs::path path = fs::path(g_.out) / name;
        std::ofstream f(path, std::ios::binary);
        f << content;
        f.close();
        if (!f) throw UsageError("cannot write " + path.string());
        manifest_.add_output(g_.out, name);
    }

    void finish() {
        const fs::path path = fs::path(g_.out) / "manifest.json";
        std::ofstream f(path, std::ios::binary);
        f << manifest_.to_json() << '\n';
        f.close();
        if (!f) throw UsageError("cannot write " + path.string());
    }

    std::ostream& out() { return out_; }
    std::ostream& err() { return err_; }

  private:
    const GlobalFlags& g_;
    std::ostream& out_;
    std::ostream& err_;
    RunManifest manifest_;
};

int cmd_specgraph(Session& s, const SpecgraphFlags& f) {
    const auto graph = spectral_graph(f.samples, f.grid, f.window);
    std::ostringstream csv;
    write_spectral_graph_csv(csv, graph);
    s.write("specgraph.csv", csv.str());
    s.finish();
    const auto zeros = zero_crossing_angles(graph);
    s.out() << "samples " << f.samples << ", grid " << f.grid << ", zero crossings:";
    for (double t : zeros) s.out() << ' ' << fmt(t);
    s.out() << " (pi/4 = " << fmt(std::numbers::pi / 4) << ")\n";
    return kExitOk;
}

int cmd_specflow(Session& s, const SpecflowFlags& f) {
    OperatorPath path = [&] {
        if (f.path == "robin") return OperatorPath::sample(robin_loop(f.grid), 0.0, std::numbers::pi, f.samples, true);
        if (f.path == "const")
            return OperatorPath::sample([](double) { return HermOp::diagonal(RVec::Constant(2, 0.5)); }, 0.0, 1.0,
                                        f.samples);
        return OperatorPath::sample(
            [](double t) {
                RVec d(2);
                d << t - 0.5, 2.0;
                return HermOp::diagonal(d);
            },
            0.0, 1.0, f.samples);
    }();
    const SpecFlowReport report = spectral_flow(path, f.window, f.max_depth);
    s.write("specflow.json", report.to_json() + "\n");
    s.finish();
    s.out() << "path " << f.path << ": flow " << report.flow << " over " << report.partition.size() - 1
            << " subintervals\n";
    return kExitOk;
}

int cmd_dichotomy(Session& s, const DichotomyFlags& f) {
    if (!(f.x1_min > 0.0 && f.x1_max > f.x1_min)) throw UsageError("dichotomy: need 0 < x1-min < x1-max");
    const auto rows = dichotomy_sweep(log_spaced(f.x1_min, f.x1_max, f.points), f.grid);
    std::ostringstream csv;
    csv << "x1,riesz_lower_bound,gap_dist\n";
    for (const auto& r : rows) csv << fmt(r.x1) << ',' << fmt(r.riesz_lower_bound) << ',' << fmt(r.gap_dist) << '\n';
    s.write("dichotomy.csv", csv.str());
    s.finish();
    s.out() << csv.str();
    return kExitOk;
}

int cmd_identities(Session& s, const IdentitiesFlags& f, std::uint64_t seed) {
    const IdentitySuiteResult r = run_identity_suite(seed, f.trials, f.dim);
    nlohmann::ordered_json j;
    j["trials"] = r.trials;
    j["max_dim"] = f.dim;
    j["tolerance"] = f.tolerance;
    for (const auto& d : r.deviations) {
        j["deviations"][d.name] = d.max_deviation;
        s.out() << d.name << ": " << fmt(d.max_deviation) << '\n';
    }
    const bool ok = r.worst() <= f.tolerance;
    j["passed"] = ok;
    s.write("identities.json", j.dump(2) + "\n");
    s.finish();
    s.out() << (ok ? "all identities within " : "identity deviation above ") << fmt(f.tolerance) << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_homotopy(Session& s, const HomotopyFlags& f, std::uint64_t seed) {
    const HomotopySuiteResult r = run_homotopy_suite(seed, f.grids);
    nlohmann::ordered_json j;
    j["endpoints_exact"] = r.endpoints_exact;
    j["min_singular_value"] = r.min_singular_value;
    j["u1_defect"] = r.u1_defect;
    j["grids"] = r.grids;
    j["delta"] = r.delta;
    j["lipschitz_zk"] = r.lipschitz_zk;
    j["rk_consistency"] = r.rk_consistency;
    j["compact_gap_violation"] = r.compact_gap_violation;
    const bool ok = r.endpoints_exact && r.min_singular_value > f.injectivity && r.u1_defect <= f.u1_tolerance &&
                    r.delta_decreasing() && r.compact_gap_violation <= 0.0;
    j["passed"] = ok;
    s.write("homotopy.json", j.dump(2) + "\n");
    s.finish();
    s.out() << j.dump(2) << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_surgery(Session& s, const SurgeryFlags& f, std::uint64_t seed) {
    const SurgerySuiteResult r = run_surgery_suite(seed, f.eps, f.trials, f.dim);
    std::ostringstream csv;
    csv << "epsilon,c,cayley_change\n";
    for (const auto& i : r.instances) csv << fmt(i.epsilon) << ',' << fmt(i.c) << ',' << fmt(i.cayley_change) << '\n';
    s.write("surgery.csv", csv.str());
    s.finish();
    s.out() << r.instances.size() << " instances, " << r.violations << " violations\n";
    return r.violations == 0 ? kExitOk : kExitCheckFailed;
}

bool flag_given(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

std::string config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    const char* env = std::getenv("OPFLOW_CONFIG");
    return env ? env : "";
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_flat_config(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        key.erase(0, key.find_first_not_of('-'));
        if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return out;
}

int run_cli(const std::vector<std::string>& input, std::ostream& out, std::ostream& err) {
    CLI::App app{"Operator transforms, metrics and spectral flow of the Robin loop", "opflow"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", tool_version());

    GlobalFlags g;
    app.add_option("--out", g.out, "Output directory");
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--config", g.config, "Flat key = value file presetting flags")->envname("OPFLOW_CONFIG");

    SpecgraphFlags sg;
    auto* specgraph = app.add_subcommand("specgraph", "Sample the spectral graph of the Robin loop");
    specgraph->add_option("--samples", sg.samples, "Loop samples")->check(CLI::Range(Index{16}, Index{1} << 20));
    specgraph->add_option("--grid", sg.grid, "Grid points")->check(CLI::Range(Index{16}, Index{1} << 16));
    specgraph->add_option("--window", sg.window, "Spectral window half-width")->check(CLI::PositiveNumber);

    SpecflowFlags sf;
    auto* specflow = app.add_subcommand("specflow", "Spectral flow along a path");
    specflow->add_option("--path", sf.path, "robin, const or cross")->check(CLI::IsMember({"robin", "const", "cross"}));
    specflow->add_option("--samples", sf.samples, "Initial samples")->check(CLI::Range(Index{1}, Index{1} << 20));
    specflow->add_option("--grid", sf.grid, "Grid points (robin)")->check(CLI::Range(Index{16}, Index{1} << 16));
    specflow->add_option("--window", sf.window, "Initial spectral window")->check(CLI::PositiveNumber);
    specflow->add_option("--max-depth", sf.max_depth, "Bisection depth budget")->check(CLI::Range(Index{0}, Index{60}));

    DichotomyFlags df;
    auto* dichotomy = app.add_subcommand("dichotomy", "Riesz lower bound and gap distance near Dirichlet");
    dichotomy->add_option("--grid", df.grid, "Grid points")->check(CLI::Range(Index{16}, Index{1} << 14));
    dichotomy->add_option("--points", df.points, "Number of x1 values")->check(CLI::Range(Index{2}, Index{10000}));
    dichotomy->add_option("--x1-min", df.x1_min, "Smallest x1")->check(CLI::PositiveNumber);
    dichotomy->add_option("--x1-max", df.x1_max, "Largest x1")->check(CLI::PositiveNumber);

    IdentitiesFlags idf;
    auto* identities = app.add_subcommand("identities", "Randomized transform identity suite");
    identities->add_option("--dim", idf.dim, "Largest dimension")->check(CLI::Range(Index{1}, Index{256}));
    identities->add_option("--trials", idf.trials, "Random instances")->check(CLI::Range(Index{1}, Index{1} << 24));
    identities->add_option("--tolerance", idf.tolerance, "Largest accepted deviation")->check(CLI::NonNegativeNumber);

    HomotopyFlags hf;
    auto* homotopy = app.add_subcommand("homotopy-demo", "Homotopy formula checks");
    homotopy->add_option("--grids", hf.grids, "Grid sizes")->delimiter(',')->check(CLI::Range(Index{4}, Index{4096}));
    homotopy->add_option("--injectivity", hf.injectivity, "Smallest accepted singular value")->check(CLI::NonNegativeNumber);
    homotopy->add_option("--u1-tolerance", hf.u1_tolerance, "Largest accepted U1 defect")->check(CLI::NonNegativeNumber);

    SurgeryFlags sur;
    auto* surgery = app.add_subcommand("surgery", "Density surgery bound");
    surgery->add_option("--trials", sur.trials, "Instances per epsilon")->check(CLI::Range(Index{1}, Index{1} << 20));
    surgery->add_option("--eps", sur.eps, "Epsilon values")->delimiter(',')->check(CLI::Range(1e-6, 3.999));
    surgery->add_option("--dim", sur.dim, "Largest dimension")->check(CLI::Range(Index{2}, Index{256}));

    std::vector<std::string> args = input;
    try {
        const std::string cfg = config_path(args);
        if (!cfg.empty()) {
            std::ifstream f(cfg);
            if (!f) throw UsageError("cannot read config file " + cfg);
            std::stringstream buf;
            buf << f.rdbuf();
            CLI::App* chosen = nullptr;
            for (const std::string& a : args)
                if (auto* s = app.get_subcommand_no_throw(a)) {
                    chosen = s;
                    break;
                }
            for (const auto& [key, value] : parse_flat_config(buf.str())) {
                const std::string flag = "--" + key;
                if (key == "config" || flag_given(args, flag)) continue;
                const bool known = (chosen && chosen->get_option_no_throw(flag)) || app.get_option_no_throw(flag);
                if (!known) {
                    err << "warning: config key '" << key << "' does not apply and is ignored\n";
                    continue;
                }
                args.push_back(flag);
                args.push_back(value);
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        Session s(g, sub, out, err);
        if (sub == specgraph) return cmd_specgraph(s, sg);
        if (sub == specflow) return cmd_specflow(s, sf);
        if (sub == dichotomy) return cmd_dichotomy(s, df);
        if (sub == identities) return cmd_identities(s, idf, g.seed);
        if (sub == homotopy) return cmd_homotopy(s, hf, g.seed);
        return cmd_surgery(s, sur, g.seed);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NonConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const ConditioningError& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace opflow
