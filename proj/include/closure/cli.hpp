#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "closure/exponent.hpp"
#include "closure/gfield.hpp"

namespace closure::cli {

enum ExitCode : int { kOk = 0, kInvalid = 1, kExhausted = 2, kInternal = 3 };

struct JobConfig {
  /// e.g. {"solve-series"} or {"recur", "combine"}.
  std::vector<std::string> command;
  /// Taken from the input when absent.
  std::optional<std::uint64_t> p;
  std::optional<Exponent> target;
  std::optional<unsigned> max_steps;
  std::uint64_t seed = FieldTower::kDefaultSeed;
  /// Empty or "-" means stdin / stdout.
  std::string in;
  std::string out;
  bool json = false;

  std::string op = "sum";
  std::string direction = "to";
  long l = 0;
  /// Length of the solution relation for `recur split --direction from`.
  std::optional<unsigned> m;
};

/// Runs one job, writing the report to `out` (or config.out) and
/// diagnostics to `err`. Returns an ExitCode.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a JobConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace closure::cli
