// commands.hpp: the subcommands of the `symldf` tool, callable in-process.

#pragma once

#include "symldf/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace symldf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitConfig = 2;

struct CommandOptions {
    // Flips the sign of the emission tilt in the acceptance checks; used to
    // confirm that `validate` notices a broken generator.
    bool inject_tilt_sign_error{false};
};

struct CommandResult {
    int exit_code{kExitOk};
    std::vector<std::filesystem::path> files;  // manifest last
};

const std::vector<std::string>& command_names();

// Writes <command>_<quantity>.csv files and run_manifest.txt into
// config.output_dir and logs a short summary to `log`. Throws ConfigError for an
// unknown command or an unwritable directory.
CommandResult run_command(const std::string& command, const RunConfig& config, std::ostream& log,
                          const CommandOptions& options = {});

} // namespace symldf
