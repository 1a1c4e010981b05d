#pragma once

#include <filesystem>
#include <iosfwd>

#include "vortexpatch/config.hpp"

namespace vortexpatch {

/// Process exit codes of a scenario run.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitParse = 2,
  kExitValidation = 3,
};

/// Run one scenario and write its artifacts into `out_dir`: report.json for
/// the static checks, series.csv (plus optional region_<step>.json
/// snapshots) for evolve. Parse and validation failures are raised before
/// any file is written.
ExitCode run_scenario(const ScenarioConfig& config, const std::filesystem::path& config_dir,
                      const std::filesystem::path& out_dir, std::ostream& log);

/// Parse the config file and run it, mapping exceptions onto exit codes.
ExitCode run_config_file(ScenarioKind kind, const std::filesystem::path& config_path,
                         const std::filesystem::path& out_dir, std::ostream& log);

} // namespace vortexpatch
