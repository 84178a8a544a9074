#include "solvcert/cli.hpp"

#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <iostream>

int main(int argc, char** argv) {
  // Diagnostics go to stderr so stdout stays machine-readable; SPDLOG_LEVEL sets verbosity.
  spdlog::set_default_logger(spdlog::stderr_color_mt("solvcert"));
  spdlog::set_level(spdlog::level::warn);
  spdlog::cfg::load_env_levels();
  return solvcert::run_cli(argc, argv, std::cout, std::cerr);
}
