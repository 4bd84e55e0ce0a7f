#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace excesslab {

enum class Subcommand { check, sweep, maximize, counterexample, scalar };
enum class OutputFormat { json, csv };

struct RunConfig {
  Subcommand subcommand = Subcommand::check;
  std::optional<std::string> input;
  std::optional<double> p;
  std::optional<double> theta;
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> restarts;
  std::optional<std::size_t> n_support;
  std::string output;  // empty: stdout
  OutputFormat format = OutputFormat::json;
  std::optional<unsigned> threads;
  /// counterexample: "holder" or "minkowski".
  std::string inequality = "holder";
  /// counterexample: "bernoulli" or "random".
  std::string construction = "bernoulli";
  /// scalar: number of s points on [0, 50].
  std::size_t points = 2000;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitInfeasible = 3;

/// Parses argv; returns the exit code to use instead when parsing fails or
/// help was requested (messages already written to out/err).
struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;
};
ParseOutcome parse_command_line(int argc, const char* const* argv,
                                std::ostream& out, std::ostream& err);

/// Executes one subcommand. Errors become exit 1 with a single line on err.
int run(const RunConfig& config, std::ostream& err);

/// parse_command_line followed by run.
int main_entry(int argc, const char* const* argv);

}  // namespace excesslab
