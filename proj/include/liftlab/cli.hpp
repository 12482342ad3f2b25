#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "liftlab/config.hpp"
#include "liftlab/dynamics.hpp"

namespace liftlab {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs `liftlab` with args (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Trajectory as JSON: version, config echo, status and samples.
Json trajectory_json(const Trajectory& traj, const std::vector<std::string>& names,
                     const Json& config);

/// Writes the trajectory to `spec.path` (or `out`) in the requested format.
/// A CSV written to a file gets a sidecar `<path>.json` with the status.
void emit_trajectory(const Trajectory& traj, const std::vector<std::string>& names,
                     const OutputSpec& spec, const Json& config, std::ostream& out);

}  // namespace liftlab
