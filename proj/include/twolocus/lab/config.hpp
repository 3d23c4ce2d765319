#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace twolocus::lab {

enum class Mode { Step, Trajectory, Limit, Sweep, Verify };
enum class Arithmetic { Rational, Floating };
enum class Format { Csv, Json };

std::string_view to_string(Mode mode);
std::string_view to_string(Arithmetic arithmetic);
std::string_view to_string(Format format);

inline constexpr std::string_view kDefaultPoint = "0.4,0.2,0.1,0.3";
/// Rational orbits stop here unless max_steps is given explicitly.
inline constexpr std::size_t kRationalStepCap = 200;

/// Everything needed to run one CLI invocation.  Numbers are kept as text
/// until the arithmetic backend is known, so "1/3" stays exact in rational
/// mode.  `load_config` has already checked that every field parses.
struct RunConfig {
  Mode mode = Mode::Step;
  std::vector<std::string> points{std::string(kDefaultPoint)};
  std::string a = "0.5";
  std::string b = "0.5";
  std::optional<std::string> a_grid;  // "min:max:count"
  std::optional<std::string> b_grid;
  std::optional<std::string> eps;
  std::optional<std::size_t> max_steps;
  /// Trajectory mode: iterate exactly this many steps instead of running to
  /// convergence.
  std::optional<std::size_t> steps;
  Arithmetic arithmetic = Arithmetic::Floating;
  std::optional<std::string> output_path;
  Format output_format = Format::Csv;
  std::optional<int> threads;

  /// Set when --help was requested; nothing else is meaningful then.
  std::optional<std::string> help;
};

/// Parses command-line tokens (without the program name).  A `--config FILE`
/// supplies defaults as flat `key = value` lines using the RunConfig field
/// names; flags given on the command line override file values.
/// Throws Error(UsageError) with an actionable message on any problem.
RunConfig load_config(const std::vector<std::string>& args);

/// Reads a flat key-value config file on top of `base`.
RunConfig apply_config_text(RunConfig base, std::string_view text, std::string_view origin);

/// Re-validates every numeric field against the chosen backend.
void check_config(const RunConfig& config);

}  // namespace twolocus::lab
