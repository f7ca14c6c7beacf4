#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "maxent/app/config.hpp"

namespace maxent::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,  // condition or verification failure
  kExitConfig = 2,
  kExitNotConverged = 3,
};

using Json = nlohmann::ordered_json;

struct CommandOutcome {
  int exit_code = kExitOk;
  Json summary;
};

/// Subcommand implementations. Each writes its tables into cfg.out_dir and
/// returns the summary document (without the header block).
CommandOutcome run_check(const RunConfig& cfg);
CommandOutcome run_measure(const RunConfig& cfg);
CommandOutcome run_orbit(const RunConfig& cfg);
CommandOutcome run_entropy(const RunConfig& cfg);
CommandOutcome run_diagnose(const RunConfig& cfg);
CommandOutcome run_verify(const RunConfig& cfg);

/// Header block shared by every output: artifact, version, command,
/// config hash and master seed.
Json header_block(const RunConfig& cfg, const std::string& command);

/// Validates cfg, dispatches `command`, writes <out>/summary.json and
/// <out>/run.log (wall-clock duration lives only in the log so that
/// summaries are reproducible byte for byte). Returns the exit code;
/// configuration problems map to kExitConfig.
int run_command(const std::string& command, const RunConfig& cfg, std::ostream& log);

}  // namespace maxent::app
