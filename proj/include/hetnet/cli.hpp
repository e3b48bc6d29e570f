#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace hetnet {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
  std::string command;
  std::string group_file, field_file, preset;
  std::optional<double> B;
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  double max_time = 1500.0;
  double epsilon = 0.5;       // seed radius around the network
  std::uint64_t seed = 1;
  int runs = 1;
  std::size_t stride = 1;     // keep every n-th accepted step in the CSV
  std::string out;            // output directory; empty writes nothing to disk
};

/// Parses argv and runs the command. Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hetnet
