#ifndef STEPWAVE_PIPELINE_HPP
#define STEPWAVE_PIPELINE_HPP

#include <filesystem>
#include <iosfwd>

namespace stepwave {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitIo = 4,
};

struct RunOptions {
  unsigned threads = 0;  ///< 0: hardware concurrency
  bool quiet = false;
  bool validate_only = false;
  bool dump_coefficients = false;
};

/// Loads the config, runs its task and writes the artifacts, printing one
/// line per file to `out`. Errors go to `err`; the return value is an
/// ExitCode.
int run(const std::filesystem::path& config_path, const RunOptions& options, std::ostream& out,
        std::ostream& err);

} // namespace stepwave

#endif
