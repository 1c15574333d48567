#pragma once

// Test-only helpers: the literal recursive formulation of the ladder sweep,
// random network generators and comparison utilities.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "tline/ladder_model.hpp"

namespace tline::testing {

/// Literal recursive form: split off generation 1, recurse on the rest, then
/// combine. Every (Z, H) pair is recorded as the recursion unwinds, so
/// `saved` ends up ordered from the receiver toward the transmitter.
inline NodeResponse recursive_response(const DamageCase& damage, const UndamagedConstants& und,
                                       Complex z_out, double omega, int generations,
                                       std::vector<NodeResponse>& saved) {
    const Complex s(0.0, omega);
    auto [first, rest] = partition(damage);
    if (generations == 0) {
        NodeResponse base{z_out, Complex(1.0, 0.0)};
        saved.push_back(base);
        return base;
    }
    NetworkSpec one{1, 1.0, und, z_out, omega};
    const GenerationConstants g1 = generation_constants(one, first, 1);
    const NodeResponse sub = recursive_response(rest, und, z_out, omega, generations - 1, saved);
    const Complex z = step_impedance(g1, sub.Z, s);
    const NodeResponse here{z, step_gain(g1, z, sub.H, s)};
    saved.push_back(here);
    return here;
}

/// Node-ordered (0..n) responses from the recursive formulation.
inline std::vector<NodeResponse> recursive_frequency_response(const NetworkSpec& spec,
                                                              const DamageCase& damage) {
    std::vector<NodeResponse> saved;
    recursive_response(damage, spec.und, spec.z_out, spec.omega, spec.n, saved);
    std::reverse(saved.begin(), saved.end());
    return saved;
}

inline double rel_err(Complex got, Complex want) {
    const double scale = std::abs(want);
    return scale == 0.0 ? std::abs(got) : std::abs(got - want) / scale;
}

inline const LineParams kTrackLine{2.5e-3, 1.8e-6, 20e-6, 0.2e-9};
inline constexpr double kTrackLength = 1170.0;
inline constexpr double kTrackOmega = 4600.0 * std::numbers::pi;
inline const Complex kTrackLoad{500.0, 0.0};

struct RandomCase {
    NetworkSpec spec;
    DamageCase damage;
};

/// Random passive line within +-3 decades of the reference track values, a random
/// generation count in [1, max_n], a passive load and up to 2n damaged
/// components with amounts in [0.01, 100].
inline RandomCase random_case(std::mt19937_64& rng, int max_n = 117) {
    std::uniform_real_distribution<double> decades(-3.0, 3.0);
    auto scaled = [&](double v) { return v * std::pow(10.0, decades(rng)); };
    const LineParams line{scaled(kTrackLine.R), scaled(kTrackLine.L), scaled(kTrackLine.G),
                          scaled(kTrackLine.C)};
    const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
    const double phase = std::uniform_real_distribution<double>(-1.4, 1.4)(rng);
    const Complex load = std::polar(scaled(500.0), phase);

    RandomCase out;
    out.spec = make_network(line, kTrackLength, n, load, kTrackOmega);

    const int count = std::uniform_int_distribution<int>(0, 2 * n)(rng);
    std::uniform_int_distribution<int> gen(1, n);
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_real_distribution<double> amount(-2.0, 2.0);
    std::set<ComponentId> used;
    std::vector<DamageEntry> entries;
    while (static_cast<int>(entries.size()) < count) {
        const ComponentId id{gen(rng), static_cast<ComponentKind>(kind(rng))};
        if (!used.insert(id).second) continue;
        entries.push_back({id, std::pow(10.0, amount(rng))});
    }
    out.damage = DamageCase(std::move(entries));
    return out;
}

}  // namespace tline::testing
