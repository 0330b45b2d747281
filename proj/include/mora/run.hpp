#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mora/report.hpp"

namespace mora {

/// Process exit codes of `mora`.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,          // unreadable file, bad goal, bad --param, bad verify settings
  kExitParse = 2,          // syntax error
  kExitNotSolvable = 3,    // violates a Prob-solvable restriction
  kExitAnalysis = 4,       // closure blowup, cyclic dependency, solver failure
  kExitVerifyFailed = 5,   // report emitted, but a Monte-Carlo check failed
};

struct VerifyOptions {
  std::map<std::string, Rational> bindings;
  unsigned iterations = 20;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  double z = 5;
  unsigned threads = 0;
};

struct RunOptions {
  std::string program_path;
  std::vector<std::string> goals;
  Format format = Format::Txt;
  std::optional<std::string> out_path;
  std::optional<VerifyOptions> verify;
  std::size_t max_closure = 10000;
};

/// Parses "name=value" with an exact rational value, e.g. "b=2" or "y(0)=-1/2".
std::pair<std::string, Rational> parse_binding(const std::string& text);

/// Full pipeline; the report goes to `out` (or to out_path), diagnostics to
/// `err`. Returns an ExitCode. `report`, when given, receives the result.
int run(const RunOptions& options, std::ostream& out, std::ostream& err, InvariantReport* report = nullptr);

}  // namespace mora
