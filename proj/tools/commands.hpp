#pragma once

#include <iosfwd>

#include <json.hpp>

namespace splice::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNoConvergence = 2,
  kVerifyFailed = 3,
  /// solve converged to the trivial solution.
  kTrivial = 4,
};

/// Built-in configuration; files and flags are merged on top of it.
nlohmann::json default_config();

/// Parses argv, runs one workflow and returns its exit code. Reports go to
/// `out` as JSON, diagnostics to `err`; data files are written under the
/// configured output directory.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace splice::cli
