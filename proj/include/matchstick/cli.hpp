#pragma once

// Command-line driver. Exit codes are partitioned by pipeline stage:
//   compile: 0 ok, 1 compile or lowering error, 2 I/O or configuration
//   verify:  0 accept, 1 reject, 2 unreadable or malformed trace
//   render:  0 ok, 2 unreadable or malformed trace
//   check:   0 all pass, 1 compile, 2 verify, 3 oracle
//   oracle:  0 pass, 1 compile, 2 trace, 3 mismatch

#include <iosfwd>
#include <string>
#include <vector>

#include "matchstick/config.hpp"

namespace matchstick::cli {

inline constexpr const char* kConfigEnv = "MATCHSTICK_CONFIG";

/// Reads a JSON object with Config's field names. Unknown keys and bad
/// values throw InvalidConfig; an unreadable file throws IoError.
Config load_config_file(const std::string& path);

/// Entry point behind the executable; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matchstick::cli
