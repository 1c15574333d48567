#include "tline/analytic_line.hpp"

#include <cmath>
#include <string>

#include "tline/errors.hpp"

namespace tline {

namespace {

void require_omega(double omega) {
    if (!std::isfinite(omega) || omega <= 0.0)
        throw InvalidInput("angular frequency must be positive and finite, got " +
                           std::to_string(omega));
}

// std::sqrt on std::complex already returns the branch with Re >= 0; the
// only fix-up is the cut itself, where -0.0 in the imaginary part could
// flip the sign of the result's imaginary part.
Complex principal_sqrt(Complex z) {
    if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
    return std::sqrt(z);
}

}  // namespace

void LineParams::validate() const {
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v) || v < 0.0)
            throw InvalidInput(std::string("line parameter ") + name +
                               " must be finite and non-negative");
    };
    check(R, "R");
    check(L, "L");
    check(G, "G");
    check(C, "C");
    if (R == 0.0 && L == 0.0)
        throw InvalidInput("line parameters need a series term: R and L are both zero");
    if (G == 0.0 && C == 0.0)
        throw InvalidInput("line parameters need a shunt term: G and C are both zero");
}

Complex propagation_constant(const LineParams& params, double omega) {
    params.validate();
    require_omega(omega);
    return principal_sqrt(params.series_impedance(omega) * params.shunt_admittance(omega));
}

Complex characteristic_impedance(const LineParams& params, double omega) {
    params.validate();
    require_omega(omega);
    return principal_sqrt(params.series_impedance(omega) / params.shunt_admittance(omega));
}

Complex reflection_coefficient(Complex z0, Complex zc) {
    const Complex den = z0 + zc;
    if (den == Complex(0.0, 0.0))
        throw SingularConfiguration("reflection coefficient undefined: Z0 + Zc = 0");
    return (z0 - zc) / den;
}

AnalyticConstants analytic_constants(const LineParams& params, Complex z0, double omega) {
    AnalyticConstants k;
    k.omega = omega;
    k.gamma = propagation_constant(params, omega);
    k.zc = characteristic_impedance(params, omega);
    k.mu = reflection_coefficient(z0, k.zc);
    return k;
}

std::vector<AnalyticSample> analytic_profile(const LineParams& params,
                                             const BoundaryCondition& boundary,
                                             std::span<const double> positions) {
    if (boundary.z0 == Complex(0.0, 0.0))
        throw SingularConfiguration("short-circuit load: mu = -1, voltage profile undefined");
    const AnalyticConstants k = analytic_constants(params, boundary.z0, boundary.omega);
    if (k.mu == Complex(1.0, 0.0))
        throw SingularConfiguration("open-circuit load: mu = 1, current profile undefined");
    if (k.mu == Complex(-1.0, 0.0))
        throw SingularConfiguration("short-circuit load: mu = -1, voltage profile undefined");

    const Complex v_scale = boundary.v0 / (1.0 + k.mu);
    const Complex i_scale = boundary.i0() / (1.0 - k.mu);

    std::vector<AnalyticSample> out;
    out.reserve(positions.size());
    for (double x : positions) {
        if (!std::isfinite(x) || x < 0.0)
            throw InvalidInput("analytic_profile positions must be finite and >= 0");
        if (x == 0.0) {
            out.push_back({0.0, boundary.v0, boundary.i0()});
            continue;
        }
        const Complex forward = std::exp(k.gamma * x);
        const Complex backward = k.mu * std::exp(-k.gamma * x);
        out.push_back({x, v_scale * (forward + backward), i_scale * (forward - backward)});
    }
    return out;
}

double time_domain_sample(Complex phasor, double omega, double phi, double t) {
    return (phasor * std::polar(1.0, omega * t + phi)).real();
}

}  // namespace tline
