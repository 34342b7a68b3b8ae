#pragma once

#include "cli/config.hpp"

namespace racetrack::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitBracket = 3;
inline constexpr int kExitInstability = 4;
inline constexpr int kExitInternal = 5;

inline constexpr int kSchemaVersion = 1;

// Each command writes <out>/<command>.json (and a CSV where applicable) and
// throws on failure; run() maps exceptions to exit codes.
void cmd_equilibrium(const RunConfig& config);
void cmd_welfare(const RunConfig& config);
void cmd_tauk(const RunConfig& config);
void cmd_dynamics(const RunConfig& config);
void cmd_hicks(const RunConfig& config);

/// Parses argv, runs one subcommand, returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace racetrack::cli
