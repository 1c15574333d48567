#pragma once

// Lumped two-rail RLGC ladder approximating a (possibly nonuniform) line.
//
//   node 0          node 1                 node n-1          node n
//   (transmitter)                                            (receiver)
//     o--r11--l11--+--o--r21--l21--+-- ... --o--rn1--ln1--+--o---+
//                  |               |                      |      |
//               rb1 || c1       rb2 || c2              rbn || cn  zOut
//                  |               |                      |      |
//     o--r12--l12--+--o--r22--l22--+-- ... --o--rn2--ln2--+--o---+
//
// Generation g sits between node g-1 and node g; node g is at distance
// x = (n - g) * dx from the receiver, so node order runs opposite to x.
// Z_g = V_g / I_g is the impedance seen from node g toward the receiver
// (I_g enters generation g+1, or the load at g = n) and H_g = V_out / V_g.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tline/analytic_line.hpp"

namespace tline {

/// Per-generation constants of the intact network.
struct UndamagedConstants {
    double r = 0.0;  ///< series resistance per rail, ohm
    double l = 0.0;  ///< series inductance per rail, H
    /// Shunt (ballast) resistance in ohm; empty means no leakage path.
    std::optional<double> rb;
    double c = 0.0;  ///< shunt capacitance, F

    void validate() const;
    bool operator==(const UndamagedConstants&) const = default;
};

/// r = R dx / 2, l = L dx / 2, rb = 1 / (G dx), c = C dx.
UndamagedConstants undamaged_constants(const LineParams& params, double dx);

struct NetworkSpec {
    int n = 0;            ///< generation count
    double dx = 0.0;      ///< segment length, m
    UndamagedConstants und;
    Complex z_out;        ///< terminating impedance at the receiver, ohm
    double omega = 0.0;   ///< rad/s

    void validate() const;
    double length() const { return n * dx; }
    Complex s() const { return {0.0, omega}; }
    /// Distance of node g from the receiver end.
    double node_x(int g) const { return (n - g) * dx; }
};

/// Discretizes a uniform line of the given length into n generations.
NetworkSpec make_network(const LineParams& params, double length, int n, Complex z_out,
                         double omega);

enum class ComponentKind {
    SeriesRTop,
    SeriesRBottom,
    SeriesLTop,
    SeriesLBottom,
    ShuntR,
    ShuntC,
};

struct ComponentId {
    int generation = 0;
    ComponentKind kind = ComponentKind::ShuntR;

    auto operator<=>(const ComponentId&) const = default;
};

/// "r1_3", "r2_3", "l1_3", "l2_3", "rb_3", "c_3".
std::string to_string(ComponentId id);
std::string_view kind_name(ComponentKind kind);
std::optional<ComponentKind> parse_kind(std::string_view name);

struct DamageEntry {
    ComponentId component;
    double amount = 1.0;  ///< multiplier on the component's natural unit

    bool operator==(const DamageEntry&) const = default;
};

/// The (components, amounts) description of a nonuniform network. Entries
/// keep their insertion order; construction rejects non-positive amounts,
/// generation indices below 1 and repeated components.
class DamageCase {
public:
    DamageCase() = default;
    explicit DamageCase(std::vector<DamageEntry> entries);

    const std::vector<DamageEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    /// Amount for `id`, if the case damages it.
    std::optional<double> amount(ComponentId id) const;

    /// Throws InvalidInput if any entry lies beyond generation n.
    void validate_for(int n) const;

    bool operator==(const DamageCase&) const = default;

private:
    std::vector<DamageEntry> entries_;
};

/// Effective constants of one generation after damage.
struct GenerationConstants {
    double r1 = 0.0;
    double r2 = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
    std::optional<double> rb;
    double c = 0.0;

    /// 1/rb + c s, with 1/rb = 0 for the no-leakage state.
    Complex shunt_admittance(Complex s) const;

    bool operator==(const GenerationConstants&) const = default;
};

GenerationConstants undamaged_generation(const UndamagedConstants& und);

/// Undamaged constants with every matching damage amount applied.
GenerationConstants generation_constants(const NetworkSpec& spec, const DamageCase& damage,
                                         int g);

/// Splits a case into its generation-1 entries and the remainder re-indexed
/// for the (n-1)-generation subnetwork (g -> g-1).
std::pair<DamageCase, DamageCase> partition(const DamageCase& damage);

/// r1 + r2 + (l1 + l2) s.
Complex series_branch(const GenerationConstants& gc, Complex s);

/// Input impedance of one generation terminated by `zs`:
///   series + 1 / (1/rb + c s + 1/zs).
/// `generation` only labels the SingularNetwork error.
Complex step_impedance(const GenerationConstants& gc, Complex zs, Complex s,
                       int generation = 0);

/// Voltage gain through one generation: hs * (1 - series / z).
Complex step_gain(const GenerationConstants& gc, Complex z, Complex hs, Complex s,
                  int generation = 0);

struct NodeResponse {
    Complex Z;  ///< V_g / I_g looking toward the receiver
    Complex H;  ///< V_out / V_g

    bool operator==(const NodeResponse&) const = default;
};

/// Per-node (Z, H) for nodes 0..n. Folds the generations from the receiver
/// (starting at (zOut, 1)) back to the transmitter.
std::vector<NodeResponse> frequency_response(const NetworkSpec& spec, const DamageCase& damage);

/// Same as above with the per-generation constants already resolved
/// (constants[g-1] belongs to generation g).
std::vector<NodeResponse> frequency_response(const NetworkSpec& spec,
                                             std::span<const GenerationConstants> constants);

/// Resolves all n generations at once, in O(n + entries).
std::vector<GenerationConstants> all_generation_constants(const NetworkSpec& spec,
                                                          const DamageCase& damage);

struct ReceiverVoltage {
    Complex v_out;
};

/// Fixes |V| at the transmitter; the transmitter phasor gets zero phase.
struct TransmitterVoltageMagnitude {
    double magnitude = 0.0;
};

using Anchor = std::variant<ReceiverVoltage, TransmitterVoltageMagnitude>;

struct NodePhasor {
    int node = 0;
    double x = 0.0;
    Complex V;
    Complex I;
    double v_max = 0.0;  ///< |V|, the peak of the sinusoid
    double i_max = 0.0;
};

struct LineProfile {
    std::vector<NodePhasor> nodes;  ///< index g = node g, transmitter first

    const NodePhasor& transmitter() const { return nodes.front(); }
    const NodePhasor& receiver() const { return nodes.back(); }
};

/// Receiver voltage implied by an anchor.
Complex anchored_output_voltage(std::span<const NodeResponse> responses, const Anchor& anchor);

/// V_g = v_out / H_g and I_g = V_g / Z_g at every node.
LineProfile node_phasors(std::span<const NodeResponse> responses, const NetworkSpec& spec,
                         const Anchor& anchor);

}  // namespace tline
