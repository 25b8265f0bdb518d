#pragma once

#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "qfc/config.hpp"
#include "qfc/experiments.hpp"

namespace qfc {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitIo = 4,
};

// Exit code for an exception escaping a run.
int exit_code_for(const std::exception& e);

// Runs the configured experiment. A pure function of the config; threads
// only change the wall time.
ExperimentResult execute(const RunConfig& config, unsigned threads = 1);

struct RunOptions {
    std::optional<std::filesystem::path> out_dir;  // overrides output.directory
    unsigned threads = 1;
    bool dump_green = false;  // also write the stage Green function at n_eff
};

// Executes and writes, in the output directory,
//   <name>.csv          result table
//   <name>.scalars.csv  headline scalars
//   <name>.meta.yaml    resolved config; re-parses to the same run
//   <name>.green.bin    with dump_green
// Files are written under temporary names and renamed once everything
// succeeded; on failure the temporaries are removed. Prints a one-line
// summary to `out` and diagnostics to `err`; returns the exit code.
int run(const RunConfig& config, const RunOptions& options, std::ostream& out, std::ostream& err);

// One-line summary of the scalars, "name: key=value ...".
std::string summary_line(const ExperimentResult& result);

}  // namespace qfc
