#ifndef LYAP_COMMANDS_HPP
#define LYAP_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lyap/markov.hpp"
#include "lyap/report.hpp"

namespace lyap {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCompareFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

struct RunConfig {
  MatrixEnsemble ensemble;
  int order = 8;
  long steps = 1'000'000;
  long trials = 16;
  std::uint64_t seed = 1;
  long samples = 1000;
  int word_len = 6;
  Format format = Format::Csv;
  int precision = 15;
  unsigned threads = 1;
  /// Adds a wall_time column; off by default so reports are reproducible.
  bool timing = false;
};

struct CommandResult {
  Report report;
  int exit_code = kExitOk;
  std::vector<std::string> warnings;
};

/// Throws Error(InvalidArgument) when a numeric setting is out of range.
void check_config(const RunConfig& cfg);

CommandResult cmd_estimate(const RunConfig& cfg);
CommandResult cmd_simulate(const RunConfig& cfg);
CommandResult cmd_compare(const RunConfig& cfg);
CommandResult cmd_diagnose(const RunConfig& cfg);

} // namespace lyap

#endif
