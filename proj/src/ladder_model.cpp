#include "tline/ladder_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "tline/errors.hpp"

namespace tline {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr std::array<std::pair<ComponentKind, std::string_view>, 6> kKindNames{{
    {ComponentKind::SeriesRTop, "r1"},
    {ComponentKind::SeriesRBottom, "r2"},
    {ComponentKind::SeriesLTop, "l1"},
    {ComponentKind::SeriesLBottom, "l2"},
    {ComponentKind::ShuntR, "rb"},
    {ComponentKind::ShuntC, "c"},
}};

void apply(GenerationConstants& gc, ComponentKind kind, double amount) {
    switch (kind) {
        case ComponentKind::SeriesRTop: gc.r1 *= amount; break;
        case ComponentKind::SeriesRBottom: gc.r2 *= amount; break;
        case ComponentKind::SeriesLTop: gc.l1 *= amount; break;
        case ComponentKind::SeriesLBottom: gc.l2 *= amount; break;
        case ComponentKind::ShuntR:
            if (gc.rb) *gc.rb *= amount;
            break;
        case ComponentKind::ShuntC: gc.c *= amount; break;
    }
}

}  // namespace

void UndamagedConstants::validate() const {
    if (!finite_nonneg(r) || !finite_nonneg(l) || !finite_nonneg(c))
        throw InvalidInput("undamaged constants r, l, c must be finite and non-negative");
    if (rb && !(std::isfinite(*rb) && *rb > 0.0))
        throw InvalidInput("undamaged shunt resistance rb must be positive and finite");
}

UndamagedConstants undamaged_constants(const LineParams& params, double dx) {
    params.validate();
    if (!std::isfinite(dx) || dx <= 0.0) throw InvalidInput("segment length dx must be positive");
    UndamagedConstants und;
    und.r = params.R * dx / 2.0;
    und.l = params.L * dx / 2.0;
    if (params.G > 0.0) und.rb = 1.0 / (params.G * dx);
    und.c = params.C * dx;
    return und;
}

void NetworkSpec::validate() const {
    if (n < 1) throw InvalidInput("network needs at least one generation");
    if (!std::isfinite(dx) || dx <= 0.0) throw InvalidInput("segment length dx must be positive");
    if (!std::isfinite(omega) || omega <= 0.0)
        throw InvalidInput("angular frequency must be positive and finite");
    if (!is_finite(z_out) || z_out == Complex(0.0, 0.0))
        throw InvalidInput("terminating impedance must be finite and nonzero");
    und.validate();
}

NetworkSpec make_network(const LineParams& params, double length, int n, Complex z_out,
                         double omega) {
    if (n < 1) throw InvalidInput("network needs at least one generation");
    if (!std::isfinite(length) || length <= 0.0) throw InvalidInput("line length must be positive");
    NetworkSpec spec;
    spec.n = n;
    spec.dx = length / n;
    spec.und = undamaged_constants(params, spec.dx);
    spec.z_out = z_out;
    spec.omega = omega;
    spec.validate();
    return spec;
}

std::string_view kind_name(ComponentKind kind) {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "?";
}

std::optional<ComponentKind> parse_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames)
        if (n == name) return k;
    return std::nullopt;
}

std::string to_string(ComponentId id) {
    return std::string(kind_name(id.kind)) + "_" + std::to_string(id.generation);
}

DamageCase::DamageCase(std::vector<DamageEntry> entries) : entries_(std::move(entries)) {
    std::set<ComponentId> seen;
    for (const auto& e : entries_) {
        if (e.component.generation < 1)
            throw InvalidInput("damage entry " + to_string(e.component) +
                               ": generation index must be >= 1");
        if (!std::isfinite(e.amount) || e.amount <= 0.0)
            throw InvalidInput("damage entry " + to_string(e.component) +
                               ": amount must be positive and finite");
        if (!seen.insert(e.component).second)
            throw InvalidInput("damage case lists " + to_string(e.component) + " twice");
    }
}

std::optional<double> DamageCase::amount(ComponentId id) const {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const DamageEntry& e) { return e.component == id; });
    if (it == entries_.end()) return std::nullopt;
    return it->amount;
}

void DamageCase::validate_for(int n) const {
    for (const auto& e : entries_)
        if (e.component.generation > n)
            throw InvalidInput("damage entry " + to_string(e.component) +
                               " is outside a " + std::to_string(n) + "-generation network");
}

Complex GenerationConstants::shunt_admittance(Complex s) const {
    const double g = rb ? 1.0 / *rb : 0.0;
    return g + c * s;
}

GenerationConstants undamaged_generation(const UndamagedConstants& und) {
    return {und.r, und.r, und.l, und.l, und.rb, und.c};
}

GenerationConstants generation_constants(const NetworkSpec& spec, const DamageCase& damage,
                                         int g) {
    if (g < 1 || g > spec.n)
        throw InvalidInput("generation " + std::to_string(g) + " outside [1, " +
                           std::to_string(spec.n) + "]");
    GenerationConstants gc = undamaged_generation(spec.und);
    for (const auto& e : damage.entries())
        if (e.component.generation == g) apply(gc, e.component.kind, e.amount);
    return gc;
}

std::vector<GenerationConstants> all_generation_constants(const NetworkSpec& spec,
                                                          const DamageCase& damage) {
    damage.validate_for(spec.n);
    std::vector<GenerationConstants> out(spec.n, undamaged_generation(spec.und));
    for (const auto& e : damage.entries())
        apply(out[e.component.generation - 1], e.component.kind, e.amount);
    return out;
}

std::pair<DamageCase, DamageCase> partition(const DamageCase& damage) {
    std::vector<DamageEntry> first;
    std::vector<DamageEntry> rest;
    for (const auto& e : damage.entries()) {
        if (e.component.generation == 1) {
            first.push_back(e);
        } else {
            DamageEntry shifted = e;
            --shifted.component.generation;
            rest.push_back(shifted);
        }
    }
    return {DamageCase(std::move(first)), DamageCase(std::move(rest))};
}

Complex series_branch(const GenerationConstants& gc, Complex s) {
    return gc.r1 + gc.r2 + gc.l1 * s + gc.l2 * s;
}

Complex step_impedance(const GenerationConstants& gc, Complex zs, Complex s, int generation) {
    if (zs == Complex(0.0, 0.0))
        throw SingularNetwork("subnetwork impedance is zero at generation " +
                                  std::to_string(generation),
                              generation);
    const Complex shunt = gc.shunt_admittance(s) + 1.0 / zs;
    if (shunt == Complex(0.0, 0.0))
        throw SingularNetwork("shunt admittance vanishes at generation " +
                                  std::to_string(generation),
                              generation);
    const Complex z = series_branch(gc, s) + 1.0 / shunt;
    if (!is_finite(z))
        throw SingularNetwork("non-finite impedance at generation " + std::to_string(generation),
                              generation);
    return z;
}

Complex step_gain(const GenerationConstants& gc, Complex z, Complex hs, Complex s,
                  int generation) {
    if (z == Complex(0.0, 0.0))
        throw SingularNetwork("input impedance is zero at generation " +
                                  std::to_string(generation),
                              generation);
    return hs * (1.0 - series_branch(gc, s) / z);
}

std::vector<NodeResponse> frequency_response(const NetworkSpec& spec,
                                             std::span<const GenerationConstants> constants) {
    spec.validate();
    if (constants.size() != static_cast<std::size_t>(spec.n))
        throw InvalidInput("expected one set of constants per generation");
    const Complex s = spec.s();
    std::vector<NodeResponse> out(spec.n + 1);
    out[spec.n] = {spec.z_out, Complex(1.0, 0.0)};
    for (int g = spec.n; g >= 1; --g) {
        const GenerationConstants& gc = constants[g - 1];
        const Complex z = step_impedance(gc, out[g].Z, s, g);
        out[g - 1] = {z, step_gain(gc, z, out[g].H, s, g)};
    }
    return out;
}

std::vector<NodeResponse> frequency_response(const NetworkSpec& spec, const DamageCase& damage) {
    spec.validate();
    const auto constants = all_generation_constants(spec, damage);
    return frequency_response(spec, constants);
}

Complex anchored_output_voltage(std::span<const NodeResponse> responses, const Anchor& anchor) {
    if (responses.empty()) throw InvalidInput("no node responses");
    if (const auto* rx = std::get_if<ReceiverVoltage>(&anchor)) {
        if (!is_finite(rx->v_out)) throw InvalidInput("receiver voltage must be finite");
        return rx->v_out;
    }
    const double magnitude = std::get<TransmitterVoltageMagnitude>(anchor).magnitude;
    if (!std::isfinite(magnitude) || magnitude < 0.0)
        throw InvalidInput("transmitter voltage magnitude must be finite and non-negative");
    // V_0 = v_out / H_0 = magnitude  =>  v_out = magnitude * H_0
    return magnitude * responses.front().H;
}

LineProfile node_phasors(std::span<const NodeResponse> responses, const NetworkSpec& spec,
                         const Anchor& anchor) {
    if (responses.size() != static_cast<std::size_t>(spec.n) + 1)
        throw InvalidInput("expected n + 1 node responses");
    const Complex v_out = anchored_output_voltage(responses, anchor);

    LineProfile profile;
    profile.nodes.reserve(responses.size());
    for (int g = 0; g <= spec.n; ++g) {
        const NodeResponse& r = responses[g];
        if (r.H == Complex(0.0, 0.0))
            throw SingularGain("voltage gain vanishes at node " + std::to_string(g), g);
        if (r.Z == Complex(0.0, 0.0))
            throw SingularGain("impedance vanishes at node " + std::to_string(g), g);
        NodePhasor p;
        p.node = g;
        p.x = spec.node_x(g);
        p.V = v_out / r.H;
        p.I = p.V / r.Z;
        p.v_max = std::abs(p.V);
        p.i_max = std::abs(p.I);
        profile.nodes.push_back(p);
    }
    return profile;
}

}  // namespace tline
