#pragma once

// Command-line front end. Subcommands: dcs, total, classify, sample,
// coincidence, hom, figure3. Exit codes: 0 success, 1 runtime failure,
// 2 argument error, 3 energy outside the low-energy domain without --force.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ppscat::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_validity = 3;

inline constexpr std::string_view tool_version = "0.1.0";

/// Inclusive `start:stop:step` grid.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  [[nodiscard]] std::vector<double> values() const;
};

/// Throws std::invalid_argument on malformed specs, unordered bounds or a
/// non-positive step.
Grid parse_grid(std::string_view spec);

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ppscat::cli
