#pragma once

#include <stdexcept>
#include <string>

namespace tline {

/// Input that violates a documented precondition (negative constants,
/// degenerate line parameters, malformed damage cases, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A boundary configuration the closed-form solution cannot represent,
/// e.g. a reflection coefficient of exactly +1 or -1.
class SingularConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The ladder (or its nodal system) has no unique solution. `generation()`
/// is the 1-based generation at which the breakdown was detected, or 0
/// when it cannot be attributed to one.
class SingularNetwork : public std::runtime_error {
public:
    SingularNetwork(const std::string& what, int generation)
        : std::runtime_error(what), generation_(generation) {}

    int generation() const noexcept { return generation_; }

private:
    int generation_;
};

/// A node's voltage gain (or voltage) vanished, so absolute phasors cannot
/// be recovered from the anchor.
class SingularGain : public std::runtime_error {
public:
    SingularGain(const std::string& what, int node)
        : std::runtime_error(what), node_(node) {}

    int node() const noexcept { return node_; }

private:
    int node_;
};

/// Scenario settings that are well-formed but outside what the generators
/// model (fractional wheel occupancy, several wheels per subsection).
class UnsupportedConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tline
