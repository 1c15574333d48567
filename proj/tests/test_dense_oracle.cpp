#include <doctest.h>

#include <random>

#include "support/reference.hpp"
#include "tline/dense_oracle.hpp"
#include "tline/errors.hpp"

using namespace tline;
using namespace tline::testing;

namespace {

NetworkSpec track_network(int n) { return make_network(kTrackLine, kTrackLength, n, kTrackLoad, kTrackOmega); }

void check_agreement(const std::vector<NodeResponse>& got, const std::vector<NodeResponse>& want,
                     double tol) {
    REQUIRE(got.size() == want.size());
    for (std::size_t g = 0; g < got.size(); ++g) {
        CAPTURE(g);
        CHECK(rel_err(got[g].Z, want[g].Z) < tol);
        CHECK(rel_err(got[g].H, want[g].H) < tol);
    }
}

}  // namespace

TEST_CASE("dense solve") {
    DenseMatrix A(2);
    A(0, 0) = 0.0;
    A(0, 1) = 2.0;
    A(1, 0) = Complex(0.0, 1.0);
    A(1, 1) = 1.0;
    const auto x = solve_dense(A, {4.0, 1.0});
    CHECK(rel_err(x[1], 2.0) < 1e-15);
    CHECK(rel_err(x[0], Complex(0.0, 1.0)) < 1e-15);

    DenseMatrix singular(2);
    singular(0, 0) = 1.0;
    singular(0, 1) = 2.0;
    singular(1, 0) = 2.0;
    singular(1, 1) = 4.0;
    CHECK_THROWS_AS(solve_dense(singular, {1.0, 1.0}), SingularNetwork);
}

TEST_CASE("wire: one generation without series or shunt elements") {
    NetworkSpec spec;
    spec.n = 1;
    spec.dx = 1.0;
    spec.z_out = 50.0;
    spec.omega = 1.0;
    const DenseSolution sol = nodal_solve(spec, DamageCase{});
    CHECK(sol.node_voltages[1] == Complex(1.0, 0.0));
    CHECK(rel_err(sol.branch_currents[0], 1.0 / 50.0) < 1e-15);
    CHECK(rel_err(sol.input_current, 1.0 / 50.0) < 1e-15);
}

TEST_CASE("resistive chain voltages are real and decreasing") {
    NetworkSpec spec;
    spec.n = 12;
    spec.dx = 1.0;
    spec.und = {0.5, 0.0, 40.0, 0.0};
    spec.z_out = 30.0;
    spec.omega = 1.0;
    const DenseSolution sol = nodal_solve(spec, DamageCase{});
    for (int g = 0; g <= spec.n; ++g) CHECK(std::abs(sol.node_voltages[g].imag()) < 1e-15);
    for (int g = 1; g <= spec.n; ++g) CHECK(sol.node_voltages[g].real() < sol.node_voltages[g - 1].real());
}

TEST_CASE("agreement with the ladder recursion") {
    SUBCASE("two undamaged track generations") {
        const NetworkSpec spec = make_network(kTrackLine, 20.0, 2, kTrackLoad, kTrackOmega);
        const auto dense = extract_responses(nodal_solve(spec, DamageCase{}), spec);
        check_agreement(dense, frequency_response(spec, DamageCase{}), 1e-12);
    }
    SUBCASE("five generations, undamaged and with a wheel shunt") {
        const NetworkSpec spec = track_network(5);
        check_agreement(extract_responses(nodal_solve(spec, DamageCase{}), spec),
                        frequency_response(spec, DamageCase{}), 1e-12);
        const DamageCase wheel({{{1, ComponentKind::ShuntR}, 0.02}});
        check_agreement(extract_responses(nodal_solve(spec, wheel), spec), frequency_response(spec, wheel),
                        1e-12);
    }
    SUBCASE("node n is the load by construction") {
        const NetworkSpec spec = track_network(5);
        const auto dense = extract_responses(nodal_solve(spec, DamageCase{}), spec);
        CHECK(dense.back() == NodeResponse{kTrackLoad, 1.0});
    }
}

TEST_CASE("collapsed and two-rail assemblies agree") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const RandomCase rc = random_case(rng, 30);
        const DenseSolution a = nodal_solve(rc.spec, rc.damage, RailLayout::Collapsed);
        const DenseSolution b = nodal_solve(rc.spec, rc.damage, RailLayout::TwoRail);
        // Two-rail voltages are differences of rail potentials measured from
        // the transmitter reference; when the line attenuates strongly both
        // potentials share a large common part, so accuracy is relative to it.
        const LinearSystem sys = assemble_nodal_system(rc.spec, rc.damage, RailLayout::TwoRail);
        const std::vector<Complex> x = solve_dense(sys.A, sys.b);
        const int n = rc.spec.n;
        for (int g = 0; g <= n; ++g) {
            const double common = g == 0 ? std::abs(x[0]) : std::abs(x[g]) + std::abs(x[n + g]);
            CHECK(std::abs(b.node_voltages[g] - a.node_voltages[g]) < 1e-10 * common);
        }
        // Rail currents follow from potential drops across the top branches.
        const auto gcs = all_generation_constants(rc.spec, rc.damage);
        for (int g = 1; g <= n; ++g) {
            const double z1 = std::abs(gcs[g - 1].r1 + gcs[g - 1].l1 * rc.spec.s());
            const double common = std::abs(b.branch_currents[g - 1]) + (std::abs(x[g - 1]) + std::abs(x[g])) / z1;
            CHECK(std::abs(b.branch_currents[g - 1] - a.branch_currents[g - 1]) < 1e-10 * common);
        }
    }
}

TEST_CASE("solution residuals and passivity") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const RandomCase rc = random_case(rng);
        const DenseSolution sol = nodal_solve(rc.spec, rc.damage);
        CHECK(sol.residual < 1e-12);
        CHECK(kirchhoff_residual(sol, rc.spec, rc.damage) < 1e-12);
        if (rc.spec.z_out.real() > 0.0)
            CHECK((sol.node_voltages[0] * std::conj(sol.input_current)).real() > 0.0);
    }
}

TEST_CASE("singular nodal system") {
    // series 1 ohm in front of 1/(1/rb + 1/zOut) = -1 ohm: the source sees a short
    NetworkSpec spec;
    spec.n = 1;
    spec.dx = 1.0;
    spec.und = {0.5, 0.0, 1.0, 0.0};
    spec.z_out = -0.5;
    spec.omega = 1.0;
    CHECK_THROWS_AS(nodal_solve(spec, DamageCase{}), SingularNetwork);
    CHECK_THROWS_AS(frequency_response(spec, DamageCase{}), SingularNetwork);
}

TEST_CASE("zero current into the subnetwork is a singular gain") {
    // 1/rb + 1/zOut = 0 behind a zero series branch: V_1 = V_0 but no current flows
    NetworkSpec spec;
    spec.n = 1;
    spec.dx = 1.0;
    spec.und = {0.0, 0.0, 1.0, 0.0};
    spec.z_out = -1.0;
    spec.omega = 1.0;
    const DenseSolution sol = nodal_solve(spec, DamageCase{});
    CHECK_THROWS_AS(extract_responses(sol, spec), SingularGain);
}
