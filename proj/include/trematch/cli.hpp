#pragma once

// tre-match [--online] [--format human|csv] [--sort] [--stats] -e EXPR [FILE]
//
// Exit codes: 0 success (including no matches), 1 expression syntax error,
// 2 behavior or stream syntax error (or unreadable input), 3 internal
// invariant violation, 64 command-line usage error.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trematch/format.hpp"

namespace trematch {

enum ExitCode : int {
  kExitOk = 0,
  kExitExprError = 1,
  kExitInputError = 2,
  kExitInternal = 3,
  kExitUsage = 64,
};

struct RunConfig {
  std::string expr_text;
  std::optional<std::string> input; // nullopt: standard input
  bool online = false;
  OutputFormat format = OutputFormat::Human;
  bool sort = false;
  bool stats = false;
  std::optional<std::size_t> fixpoint_cap; // debugging: repetition round limit
};

/// Runs the command line against the given streams. `args` excludes the
/// program name. Online output is flushed after every emission.
int run(const std::vector<std::string> &args, std::istream &in,
        std::ostream &out, std::ostream &err);

/// Runs an already-parsed configuration.
int run(const RunConfig &config, std::istream &in, std::ostream &out,
        std::ostream &err);

} // namespace trematch
