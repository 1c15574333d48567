#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>

#include "tline/run_config.hpp"

namespace tline {

enum class Command { Validate, Simulate, Train, Sweep };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command command);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int singular = 3;
inline constexpr int io = 4;
}  // namespace exit_code

/// Max relative error of the ladder's per-node Vmax (and Imax) against the
/// closed-form profile at the same positions, for an undamaged n-generation
/// discretization of `config`.
struct ConvergenceError {
    int n = 0;
    double vmax = 0.0;
    double imax = 0.0;
};

ConvergenceError convergence_error(const RunConfig& config, int n);

/// Executes one command and writes CSV to `out`. Diagnostics go to `err`.
/// Returns one of the exit_code values.
int run(Command command, const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace tline
