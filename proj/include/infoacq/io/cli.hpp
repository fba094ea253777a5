#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "infoacq/model.hpp"

namespace infoacq::io {

// Flag / config-file problems; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Command { solve, trace, simulate, statics, verify, sweep };

struct RunConfig {
  Command command;
  ModelParams params;
  int horizon = 25;
  std::int64_t paths = 10000;
  std::uint64_t seed = 1;
  int grid = 2048;
  // Meaning depends on the command: root-solve residual tolerance for
  // solve/trace/simulate/statics/sweep (default 1e-12), value-iteration
  // sweep tolerance for verify (default 1e-9).
  std::optional<double> tol;
  std::string axis;  // sweep
  double from = 0.0, to = 0.0;
  int steps = 0;
  std::string out;     // empty: stdout
  std::string format;  // "json" or "csv"
  std::string svg;     // sweep only; empty: no chart
};

// Parses flags (and the optional --config JSON file; flags win). Throws
// UsageError / CLI parse errors on any problem. args excludes the program
// name.
RunConfig parse_cli(const std::vector<std::string>& args);

// Full command dispatch with exit-code semantics: 0 success, 1 computation
// or verification failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// Write-to-temp-then-rename; partial output is never left at `path`.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace infoacq::io
