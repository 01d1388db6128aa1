#ifndef PWR_TOOLS_COMMANDS_HPP
#define PWR_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pwr/engine.hpp"

namespace pwr::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,        ///< I/O, parse, unknown labels, bad flags
  kContractViolation = 2, ///< e.g. --zero-div error triggered, empty subset
};

/// Everything a subcommand may read; filled by the argument parser.
struct RunConfig {
  std::string subcommand;
  std::string input;
  std::optional<std::string> format;
  std::optional<std::string> output;
  PwrOptions pwr;
  std::optional<std::string> plot;

  // scc
  bool largest = false;
  // subset
  std::string target;
  double min_count = 0.0;
  std::optional<std::string> union_with;
  // decompose
  double cosine_threshold = 0.01;
  double resolution = 1.0;
  std::string cosine_diagonal = "include";
  // compare
  std::vector<std::string> metrics{"pwr"};
  std::vector<std::string> externals;
  double damping = 0.85;
  // convert
  std::optional<std::string> to_format;
  bool force = false;
};

/// Parses `args` (without the program name) and runs one subcommand.
/// Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_pwr(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_scc(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_subset(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_decompose(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_convert(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace pwr::cli

#endif // PWR_TOOLS_COMMANDS_HPP
