#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "revlat/cli/run_config.hpp"

namespace revlat::cli {

/// Exit codes of dispatch().
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kParameter = 3,
  kRange = 4,
  kState = 5,
};

/// Parses argv (without the program name) into a RunConfig; `--config FILE`
/// supplies defaults that explicit flags override. Throws CLI::Error.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs one subcommand. Reports go to `out` as JSON; failures print a JSON
/// object {"error": {"kind", "message"}} to `err` and return a nonzero code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revlat::cli
