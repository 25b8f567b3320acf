#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace shockcop {

enum class OutputFormat { Json, Csv };

enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitConfigError = 2 };

struct RunConfig {
  std::string command;
  std::filesystem::path scenario;
  std::optional<std::size_t> grid;  // overrides the scenario's grid
  std::optional<double> tol;
  std::uint64_t seed = 42;
  std::filesystem::path out = ".";
  OutputFormat format = OutputFormat::Json;
  std::size_t scenarios = 1000;  // search only
  std::size_t atoms = 10;        // search only
  bool quiet = false;
};

/// Throws ConfigError on n < 2 or tol <= 0.
void validate(const RunConfig& cfg);

int cmd_pipeline(const RunConfig& cfg);
int cmd_search(const RunConfig& cfg);
int cmd_emit(const RunConfig& cfg);

/// Parses argv and dispatches; never throws.
int run_cli(int argc, char** argv);

}  // namespace shockcop
