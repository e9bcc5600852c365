#pragma once

// The projext command line: gen, extend, verify, certify, counterexample.

#include <cstdint>
#include <iosfwd>
#include <string>

namespace projext::cli {

enum class Command { gen, extend, verify, certify, counterexample };

std::string to_string(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitHypothesis = 1;
inline constexpr int kExitConclusion = 2;
inline constexpr int kExitUsage = 64;

struct RunConfig {
  Command command = Command::gen;
  std::string input_path;
  /// Empty: the report goes to standard output instead of the summary.
  std::string output_path;
  std::uint64_t seed = 0;
  int samples = 500;
  double tolerance_scale = 1.0;
  std::string profile = "sin";
};

/// Executes one command. Never throws; failures map to exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs. Usage errors return kExitUsage.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace projext::cli
