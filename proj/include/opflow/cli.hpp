#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace opflow {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command-line tool on `args` (without the program name).
/// Subcommands: specgraph, specflow, dichotomy, identities, homotopy-demo, surgery.
/// Global flags --out DIR, --seed N, --config PATH (or OPFLOW_CONFIG); config files
/// hold flat `key = value` lines and only fill flags absent from the command line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses flat `key = value` lines; `#` starts a comment, leading dashes on keys are dropped.
std::vector<std::pair<std::string, std::string>> parse_flat_config(const std::string& text);

}  // namespace opflow
