// Subcommands of the ssmt executable. Each writes its outputs and a manifest into
// cfg.out and returns normally, or throws an ssmt::Error whose kind selects the exit code.

#pragma once

#include <iosfwd>

#include "config.hpp"

namespace ssmt::cli {

void cmd_apply(const RunConfig& cfg, bool force, std::ostream& log);
void cmd_simulate(const RunConfig& cfg, bool force, std::ostream& log);
void cmd_sweep(const RunConfig& cfg, bool force, std::ostream& log);
void cmd_boundary(const RunConfig& cfg, bool force, std::ostream& log);
void cmd_reproduce(const RunConfig& cfg, bool force, std::ostream& log);
void cmd_bench(const RunConfig& cfg, bool force, std::ostream& log);

// Full command line: parses flags (config file first, explicit flags override),
// dispatches, and maps failures to exit codes 0 success, 1 usage, 2 data, 3 numerical.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ssmt::cli
