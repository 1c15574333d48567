#pragma once

// Run configuration: a line-oriented `section.key = value` format with `#`
// comments. See configs/uniform.cfg for a complete example.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tline/ladder_model.hpp"
#include "tline/scenarios.hpp"

namespace tline {

/// Malformed configuration. line/column are 1-based; 0 when the problem is
/// not tied to a location (e.g. a missing key).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, int line = 0, int column = 0);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

enum class AnchorKind { Receiver, Transmitter };

struct AnchorConfig {
    AnchorKind kind = AnchorKind::Receiver;
    double magnitude = 110.0;  ///< V
    double phase_deg = 0.0;    ///< receiver anchor only

    bool operator==(const AnchorConfig&) const = default;
};

enum class SweepScale { Linear, Log };

struct SweepConfig {
    double f_start = 100.0;  ///< Hz
    double f_stop = 10000.0;
    int points = 50;
    SweepScale scale = SweepScale::Log;

    bool operator==(const SweepConfig&) const = default;
};

struct RunConfig {
    LineParams line;
    double length = 0.0;  ///< m
    int generations = 0;
    double frequency = 0.0;  ///< Hz
    Complex load;            ///< zOut, ohm
    AnchorConfig anchor;
    double phi = 0.0;  ///< rad, time-domain reference phase
    std::vector<int> validate_generations{5, 10, 50};
    std::vector<DamageEntry> damage;
    std::optional<BallastProfile> ballast;
    TrainSpec train;
    SweepConfig sweep;

    double dx() const { return length / generations; }
    double omega() const;
    NetworkSpec network() const;
    NetworkSpec network(int n) const;
    Anchor ladder_anchor() const;
    /// Explicit damage entries followed by the ballast profile, if any.
    DamageCase damage_case() const;

    bool operator==(const RunConfig&) const = default;
};

/// Parses and fully validates a configuration.
RunConfig parse_config(std::string_view text);

/// Canonical text form; every value (defaults included) is written out and
/// parse_config(format_config(c)) == c.
std::string format_config(const RunConfig& config);

/// "%.17g" rendering used for all numeric output.
std::string format_number(double value);

}  // namespace tline
