#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace condlab::cli {

// Exit-code contract shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,  // a bound violation, or a failed self-test check
  kExitConfig = 2,     // bad arguments, schema errors, unmet preconditions
  kExitNumeric = 3,    // quadrature failure, fully censored estimates
};

// Runs one command; args excludes the program name. Tabular output goes to
// the configured file or, when none is given, to out (the JSON summary then
// goes to err).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace condlab::cli
