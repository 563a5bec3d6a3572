#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stepwave/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Reflection/transmission solver for one-dimensional potentials"};
  app.set_version_flag("--version", "stepwave 1.0.0");

  std::string config;
  stepwave::RunOptions options;
  app.add_option("config", config, "run configuration (JSON)")->required();
  app.add_option("--threads", options.threads, "worker threads, 0 = all cores")->default_val(0);
  app.add_flag("--quiet", options.quiet, "suppress the per-file summary");
  app.add_flag("--validate-only", options.validate_only, "check the config and exit");
  app.add_flag("--dump-coefficients", options.dump_coefficients,
               "also write every k, T, R, A, B for transmit and wavefunc tasks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : stepwave::kExitConfig;
  }
  return stepwave::run(config, options, std::cout, std::cerr);
}
