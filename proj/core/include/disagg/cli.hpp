#pragma once

#include <string>
#include <vector>

namespace disagg {

// Entry point behind the `disagg` binary: subcommands validate, compute,
// summarize, rank, plot, simulate. Returns the process exit status
// (0 iff no errors were emitted).
int run_cli(const std::vector<std::string>& args);

}  // namespace disagg
