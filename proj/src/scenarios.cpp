#include "tline/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tline/errors.hpp"

namespace tline {

void BallastProfile::validate(int n) const {
    if (g_lo < 1 || g_hi < g_lo)
        throw InvalidInput("ballast span [" + std::to_string(g_lo) + ", " + std::to_string(g_hi) +
                           "] is empty or starts below generation 1");
    if (n > 0 && g_hi > n)
        throw InvalidInput("ballast span ends at generation " + std::to_string(g_hi) +
                           " beyond a " + std::to_string(n) + "-generation network");
    const auto expected = static_cast<std::size_t>(span_size());
    if (rb_factors.size() != expected || c_factors.size() != expected)
        throw InvalidInput("ballast profile needs " + std::to_string(expected) +
                           " rb and c factors, got " + std::to_string(rb_factors.size()) + " and " +
                           std::to_string(c_factors.size()));
    auto positive = [](double f) { return std::isfinite(f) && f > 0.0; };
    if (!std::all_of(rb_factors.begin(), rb_factors.end(), positive) ||
        !std::all_of(c_factors.begin(), c_factors.end(), positive))
        throw InvalidInput("ballast factors must be positive and finite");
}

std::vector<std::string> BallastProfile::warnings() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < rb_factors.size(); ++i)
        if (rb_factors[i] > 1.0)
            out.push_back("rb factor " + std::to_string(rb_factors[i]) + " at generation " +
                          std::to_string(g_lo + static_cast<int>(i)) + " raises ballast resistance");
    for (std::size_t i = 0; i < c_factors.size(); ++i)
        if (c_factors[i] < 1.0)
            out.push_back("c factor " + std::to_string(c_factors[i]) + " at generation " +
                          std::to_string(g_lo + static_cast<int>(i)) + " lowers ballast capacitance");
    return out;
}

BallastProfile default_ballast_profile(int g_lo, int g_hi, double rb_min, double c_max) {
    if (!(rb_min > 0.0) || !(c_max > 0.0) || !std::isfinite(rb_min) || !std::isfinite(c_max))
        throw InvalidInput("ballast extremes must be positive and finite");
    BallastProfile p;
    p.g_lo = g_lo;
    p.g_hi = g_hi;
    if (g_hi < g_lo) {
        p.validate();
        return p;
    }
    const int m = p.span_size();
    p.rb_factors.reserve(m);
    p.c_factors.reserve(m);
    for (int i = 0; i < m; ++i) {
        // raised cosine, zero just outside both ends of the span, 1 at the center
        const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * (i + 1) / (m + 1)));
        p.rb_factors.push_back(1.0 - (1.0 - rb_min) * w);
        p.c_factors.push_back(1.0 + (c_max - 1.0) * w);
    }
    p.validate();
    return p;
}

DamageCase ballast_damage(const BallastProfile& profile) {
    profile.validate();
    std::vector<DamageEntry> entries;
    entries.reserve(2 * profile.rb_factors.size());
    for (int i = 0; i < profile.span_size(); ++i)
        entries.push_back({{profile.g_lo + i, ComponentKind::ShuntR}, profile.rb_factors[i]});
    for (int i = 0; i < profile.span_size(); ++i)
        entries.push_back({{profile.g_lo + i, ComponentKind::ShuntC}, profile.c_factors[i]});
    return DamageCase(std::move(entries));
}

void TrainSpec::validate() const {
    if (wheelbase_count < 1) throw InvalidInput("train needs at least one wheelbase");
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(wheelbase_spacing) || !positive(wheel_resistance) || !positive(speed))
        throw InvalidInput("train spacing, wheel resistance and speed must be positive");
}

double wheel_shunt_factor(double rb, double r_w) {
    if (!(rb > 0.0) || !(r_w > 0.0) || std::isnan(rb) || std::isnan(r_w))
        throw InvalidInput("wheel_shunt_factor needs positive resistances");
    if (std::isinf(r_w)) return 1.0;
    return r_w / (rb + r_w);
}

std::vector<TimelineEntry> train_timeline(const NetworkSpec& spec, const TrainSpec& train) {
    spec.validate();
    train.validate();
    if (std::abs(train.wheelbase_spacing - spec.dx) > 1e-9 * spec.dx)
        throw UnsupportedConfiguration(
            "wheelbase spacing must equal the subsection length (one wheel per subsection)");
    if (!spec.und.rb)
        throw UnsupportedConfiguration("wheel shunts need a finite undamaged shunt resistance");

    const double factor = wheel_shunt_factor(*spec.und.rb, train.wheel_resistance);
    const int n = spec.n;
    const int wheels = train.wheelbase_count;
    const int steps = n + wheels - 1;

    std::vector<TimelineEntry> timeline;
    timeline.reserve(steps);
    for (int k = 1; k <= steps; ++k) {
        // wheel i (0 = leading) has advanced k - i subsections past the entry end
        std::vector<DamageEntry> entries;
        for (int i = 0; i < wheels; ++i) {
            const int advanced = k - i;
            if (advanced < 1 || advanced > n) continue;
            const int g = train.entry == EntryEnd::Receiver ? n + 1 - advanced : advanced;
            entries.push_back({{g, ComponentKind::ShuntR}, factor});
        }
        // Listed from the entry end inward, i.e. trailing wheel first.
        std::reverse(entries.begin(), entries.end());
        timeline.push_back({k * spec.dx / train.speed, DamageCase(std::move(entries))});
    }
    return timeline;
}

}  // namespace tline
