#pragma once

// Damage-case generators for track-circuit scenarios: ballast degradation
// over a span of subsections, and a train whose wheelsets shunt the rails
// as it runs through the section.

#include <string>
#include <vector>

#include "tline/ladder_model.hpp"

namespace tline {

/// Per-generation multipliers over the span [g_lo, g_hi]. Degraded ballast
/// lowers rb (factors below 1) and raises c (factors above 1).
struct BallastProfile {
    int g_lo = 1;
    int g_hi = 1;
    std::vector<double> rb_factors;
    std::vector<double> c_factors;

    int span_size() const { return g_hi - g_lo + 1; }

    /// Throws InvalidInput on a bad span (against n, when n > 0), list
    /// length mismatch or non-positive factors.
    void validate(int n = 0) const;

    /// Factors pointing the "wrong" way (rb > 1 or c < 1). Not an error.
    std::vector<std::string> warnings() const;

    bool operator==(const BallastProfile&) const = default;
};

/// Smooth symmetric dip over the span: rb factors fall from 1 toward
/// `rb_min` at the span center, c factors rise toward `c_max`.
BallastProfile default_ballast_profile(int g_lo, int g_hi, double rb_min, double c_max);

/// One ShuntR entry per generation (rb_factors), then one ShuntC entry per
/// generation (c_factors).
DamageCase ballast_damage(const BallastProfile& profile);

enum class EntryEnd { Receiver, Transmitter };

struct TrainSpec {
    int wheelbase_count = 20;
    double wheelbase_spacing = 10.0;   ///< m
    double wheel_resistance = 102.0408;  ///< ohm, one wheelset across the rails
    double speed = 100.0;              ///< m/s
    EntryEnd entry = EntryEnd::Receiver;

    void validate() const;
    bool operator==(const TrainSpec&) const = default;
};

/// rb || r_w relative to rb, i.e. r_w / (rb + r_w).
double wheel_shunt_factor(double rb, double r_w);

struct TimelineEntry {
    double t = 0.0;  ///< s
    DamageCase damage;
};

/// One damage case per subsection advance: n + wheelbase_count - 1 steps at
/// t = k dx / speed. Wheel entries are listed from the entry end inward.
/// Throws UnsupportedConfiguration unless the wheelbase spacing equals dx
/// and the network has a finite shunt resistance.
std::vector<TimelineEntry> train_timeline(const NetworkSpec& spec, const TrainSpec& train);

}  // namespace tline
