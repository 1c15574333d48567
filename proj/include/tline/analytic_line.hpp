#pragma once

// Closed-form steady-state solution of a uniform RLGC transmission line.
//
// Coordinates follow the railway convention: x = 0 is the receiver (load)
// end and x grows toward the transmitter. With v0 the receiver voltage and
// Z0 the load,
//
//   V(x) = v0 / (1 + mu) * (exp(gamma x) + mu exp(-gamma x))
//   I(x) = i0 / (1 - mu) * (exp(gamma x) - mu exp(-gamma x)),   i0 = v0 / Z0
//
// and the physical signals are Re{V(x) exp(j(omega t + phi))}.

#include <complex>
#include <span>
#include <vector>

namespace tline {

using Complex = std::complex<double>;

/// Per-unit-length attributes of the continuous line.
struct LineParams {
    double R = 0.0;  ///< series resistance, ohm/m
    double L = 0.0;  ///< series inductance, H/m
    double G = 0.0;  ///< shunt conductance, S/m
    double C = 0.0;  ///< shunt capacitance, F/m

    /// Throws InvalidInput unless all values are finite and non-negative,
    /// at least one of (R, L) and one of (G, C) is positive.
    void validate() const;

    Complex series_impedance(double omega) const { return {R, omega * L}; }
    Complex shunt_admittance(double omega) const { return {G, omega * C}; }

    bool operator==(const LineParams&) const = default;
};

struct AnalyticConstants {
    Complex gamma;  ///< propagation constant, 1/m
    Complex zc;     ///< characteristic impedance, ohm
    Complex mu;     ///< reflection coefficient at the load
    double omega = 0.0;
};

/// Receiver-end boundary condition.
struct BoundaryCondition {
    Complex v0;          ///< receiver voltage phasor, V
    Complex z0;          ///< load impedance at x = 0, ohm
    double omega = 0.0;  ///< rad/s
    double phi = 0.0;    ///< reference phase offset, rad

    Complex i0() const { return v0 / z0; }
};

struct AnalyticSample {
    double x = 0.0;
    Complex V;
    Complex I;
};

/// Principal square root of (R + j omega L)(G + j omega C).
Complex propagation_constant(const LineParams& params, double omega);

/// Principal square root of (R + j omega L)/(G + j omega C).
Complex characteristic_impedance(const LineParams& params, double omega);

/// (Z0 - Zc)/(Z0 + Zc). Throws SingularConfiguration when Z0 + Zc == 0.
Complex reflection_coefficient(Complex z0, Complex zc);

AnalyticConstants analytic_constants(const LineParams& params, Complex z0, double omega);

/// Voltage and current phasors at each requested position (x >= 0).
/// Throws SingularConfiguration for mu == 1 or mu == -1.
std::vector<AnalyticSample> analytic_profile(const LineParams& params,
                                             const BoundaryCondition& boundary,
                                             std::span<const double> positions);

/// Re{phasor * exp(j(omega t + phi))}.
double time_domain_sample(Complex phasor, double omega, double phi, double t);

}  // namespace tline
