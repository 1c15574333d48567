#include "tline/dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "tline/errors.hpp"

namespace tline {

namespace {

bool all_finite(const std::vector<Complex>& v) {
    return std::all_of(v.begin(), v.end(), [](Complex z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

double norm2(const std::vector<Complex>& v) {
    double acc = 0.0;
    for (Complex z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

// Unknown layout, collapsed:  V_0..V_n | J_1..J_n | I_src
LinearSystem assemble_collapsed(const NetworkSpec& spec,
                                const std::vector<GenerationConstants>& gcs) {
    const int n = spec.n;
    const Complex s = spec.s();
    const std::size_t size = 2 * static_cast<std::size_t>(n) + 2;
    auto V = [](int g) { return static_cast<std::size_t>(g); };
    auto J = [n](int g) { return static_cast<std::size_t>(n + g); };
    const std::size_t src = size - 1;

    LinearSystem sys{DenseMatrix(size), std::vector<Complex>(size)};
    auto& A = sys.A;

    A(V(0), src) = 1.0;
    A(V(0), J(1)) = -1.0;
    for (int g = 1; g <= n; ++g) {
        const auto& gc = gcs[g - 1];
        // KCL at node g: J_g - Y_g V_g - (J_{g+1} or V_n / zOut) = 0
        A(V(g), J(g)) += 1.0;
        A(V(g), V(g)) -= gc.shunt_admittance(s);
        if (g < n)
            A(V(g), J(g + 1)) -= 1.0;
        else
            A(V(g), V(g)) -= 1.0 / spec.z_out;
        // branch law: V_{g-1} - V_g - z_g J_g = 0
        A(J(g), V(g - 1)) = 1.0;
        A(J(g), V(g)) = -1.0;
        A(J(g), J(g)) = -series_branch(gc, s);
    }
    A(src, V(0)) = 1.0;
    sys.b[src] = 1.0;
    return sys;
}

// Unknown layout, two rails:  t_0..t_n | b_1..b_n | T_1..T_n | B_1..B_n | I_src
// T_g flows along the top rail toward the receiver, B_g along the bottom
// rail back toward the transmitter. b_0 is the reference node.
LinearSystem assemble_two_rail(const NetworkSpec& spec,
                               const std::vector<GenerationConstants>& gcs) {
    const int n = spec.n;
    const Complex s = spec.s();
    const std::size_t size = 4 * static_cast<std::size_t>(n) + 2;
    auto t = [](int g) { return static_cast<std::size_t>(g); };
    auto b = [n](int g) { return static_cast<std::size_t>(n + g); };
    auto T = [n](int g) { return static_cast<std::size_t>(2 * n + g); };
    auto B = [n](int g) { return static_cast<std::size_t>(3 * n + g); };
    const std::size_t src = size - 1;

    LinearSystem sys{DenseMatrix(size), std::vector<Complex>(size)};
    auto& A = sys.A;

    A(t(0), src) = 1.0;
    A(t(0), T(1)) = -1.0;
    for (int g = 1; g <= n; ++g) {
        const auto& gc = gcs[g - 1];
        Complex y = gc.shunt_admittance(s);
        if (g == n) y += 1.0 / spec.z_out;

        // top node: T_g - y (t_g - b_g) - T_{g+1} = 0
        A(t(g), T(g)) += 1.0;
        A(t(g), t(g)) -= y;
        A(t(g), b(g)) += y;
        if (g < n) A(t(g), T(g + 1)) -= 1.0;

        // bottom node: y (t_g - b_g) + B_{g+1} - B_g = 0
        A(b(g), t(g)) += y;
        A(b(g), b(g)) -= y;
        A(b(g), B(g)) -= 1.0;
        if (g < n) A(b(g), B(g + 1)) += 1.0;

        // top branch: t_{g-1} - t_g - z1 T_g = 0
        A(T(g), t(g - 1)) = 1.0;
        A(T(g), t(g)) = -1.0;
        A(T(g), T(g)) = -(gc.r1 + gc.l1 * s);

        // bottom branch: b_g - b_{g-1} - z2 B_g = 0
        A(B(g), b(g)) = 1.0;
        if (g > 1) A(B(g), b(g - 1)) = -1.0;
        A(B(g), B(g)) = -(gc.r2 + gc.l2 * s);
    }
    A(src, t(0)) = 1.0;
    sys.b[src] = 1.0;
    return sys;
}

}  // namespace

namespace {

// In-place LU factors of A with the row permutation applied during
// elimination (partial pivoting).
struct LuFactors {
    DenseMatrix lu;
    std::vector<std::size_t> perm;
};

LuFactors factorize(DenseMatrix A) {
    const std::size_t n = A.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(A(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double mag = std::abs(A(r, k));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0)
            throw SingularNetwork("nodal matrix is singular (column " + std::to_string(k) + ")", 0);
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(A(k, c), A(pivot, c));
            std::swap(perm[k], perm[pivot]);
        }
        const Complex inv = 1.0 / A(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            if (A(r, k) == Complex(0.0, 0.0)) continue;
            const Complex f = A(r, k) * inv;
            A(r, k) = f;
            for (std::size_t c = k + 1; c < n; ++c) A(r, c) -= f * A(k, c);
        }
    }
    return {std::move(A), std::move(perm)};
}

std::vector<Complex> lu_solve(const LuFactors& f, const std::vector<Complex>& b) {
    const std::size_t n = f.lu.size();
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = b[f.perm[i]];
        for (std::size_t c = 0; c < i; ++c) acc -= f.lu(i, c) * y[c];
        y[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
        Complex acc = y[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= f.lu(i, c) * y[c];
        y[i] = acc / f.lu(i, i);
    }
    return y;
}

std::vector<Complex> residual(const DenseMatrix& A, const std::vector<Complex>& x,
                              const std::vector<Complex>& b) {
    const std::size_t n = A.size();
    std::vector<Complex> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = b[i];
        for (std::size_t c = 0; c < n; ++c) acc -= A(i, c) * x[c];
        r[i] = acc;
    }
    return r;
}

}  // namespace

namespace {

// Partial-pivoting solve of A x = b followed by fixed-precision iterative
// refinement.
std::vector<Complex> refined_solve(const DenseMatrix& A, const std::vector<Complex>& b) {
    const std::size_t n = A.size();
    const LuFactors f = factorize(A);
    std::vector<Complex> x = lu_solve(f, b);
    if (!all_finite(x)) throw SingularNetwork("nodal solve produced non-finite values", 0);

    constexpr int kMaxSweeps = 10;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const std::vector<Complex> d = lu_solve(f, residual(A, x, b));
        bool converged = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(d[i]) > 1e-16 * std::abs(x[i])) converged = false;
            x[i] += d[i];
        }
        if (!all_finite(x)) throw SingularNetwork("nodal solve produced non-finite values", 0);
        if (converged) break;
    }
    return x;
}

}  // namespace

std::vector<Complex> solve_dense(const DenseMatrix& A, const std::vector<Complex>& b) {
    const std::size_t n = A.size();
    if (b.size() != n) throw InvalidInput("right-hand side size does not match the matrix");

    std::vector<Complex> x = refined_solve(A, b);

    // Partial pivoting is only normwise accurate: unknowns many decades below
    // the largest one come out as rounding noise. Re-solving with the columns
    // scaled by the current magnitudes (and rows equilibrated) resolves
    // roughly another sixteen decades per round without changing the exact
    // solution.
    std::vector<double> scale(n, 1.0);
    constexpr int kMaxRounds = 40;
    for (int round = 0; round < kMaxRounds; ++round) {
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(x[j]) > 0.0) scale[j] = std::abs(x[j]);

        DenseMatrix S(n);
        std::vector<Complex> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            double row_max = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                S(i, j) = A(i, j) * scale[j];
                row_max = std::max(row_max, std::abs(S(i, j)));
            }
            const double w = row_max > 0.0 ? 1.0 / row_max : 1.0;
            for (std::size_t j = 0; j < n; ++j) S(i, j) *= w;
            rhs[i] = b[i] * w;
        }

        const std::vector<Complex> y = refined_solve(S, rhs);
        bool settled = true;
        for (std::size_t j = 0; j < n; ++j) {
            const Complex next = y[j] * scale[j];
            if (std::abs(next - x[j]) > 1e-14 * std::abs(next)) settled = false;
            x[j] = next;
        }
        if (settled) break;
    }
    return x;
}

double relative_residual(const LinearSystem& system, const std::vector<Complex>& x) {
    const std::size_t n = system.A.size();
    std::vector<Complex> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = -system.b[i];
        for (std::size_t c = 0; c < n; ++c) acc += system.A(i, c) * x[c];
        r[i] = acc;
    }
    const double nb = norm2(system.b);
    return nb == 0.0 ? norm2(r) : norm2(r) / nb;
}

LinearSystem assemble_nodal_system(const NetworkSpec& spec, const DamageCase& damage,
                                   RailLayout layout) {
    spec.validate();
    const auto gcs = all_generation_constants(spec, damage);
    return layout == RailLayout::Collapsed ? assemble_collapsed(spec, gcs)
                                           : assemble_two_rail(spec, gcs);
}

DenseSolution nodal_solve(const NetworkSpec& spec, const DamageCase& damage, RailLayout layout) {
    const LinearSystem sys = assemble_nodal_system(spec, damage, layout);
    const std::vector<Complex> x = solve_dense(sys.A, sys.b);
    const int n = spec.n;

    DenseSolution sol;
    sol.residual = relative_residual(sys, x);
    sol.input_current = x.back();
    sol.node_voltages.resize(n + 1);
    sol.branch_currents.resize(n);
    if (layout == RailLayout::Collapsed) {
        for (int g = 0; g <= n; ++g) sol.node_voltages[g] = x[g];
        for (int g = 1; g <= n; ++g) sol.branch_currents[g - 1] = x[n + g];
    } else {
        sol.node_voltages[0] = x[0];
        for (int g = 1; g <= n; ++g) sol.node_voltages[g] = x[g] - x[n + g];
        for (int g = 1; g <= n; ++g) sol.branch_currents[g - 1] = x[2 * n + g];
    }
    sol.load_current = sol.node_voltages[n] / spec.z_out;
    return sol;
}

double kirchhoff_residual(const DenseSolution& sol, const NetworkSpec& spec,
                          const DamageCase& damage) {
    const auto gcs = all_generation_constants(spec, damage);
    const Complex s = spec.s();
    const int n = spec.n;

    double scale = std::max(std::abs(sol.input_current), std::abs(sol.load_current));
    for (Complex j : sol.branch_currents) scale = std::max(scale, std::abs(j));

    double worst = std::abs(sol.input_current - sol.branch_currents[0]);
    for (int g = 1; g <= n; ++g) {
        const Complex out = g < n ? sol.branch_currents[g] : sol.load_current;
        const Complex mismatch = sol.branch_currents[g - 1] -
                                 gcs[g - 1].shunt_admittance(s) * sol.node_voltages[g] - out;
        worst = std::max(worst, std::abs(mismatch));
    }
    return scale == 0.0 ? worst : worst / scale;
}

std::vector<NodeResponse> extract_responses(const DenseSolution& sol, const NetworkSpec& spec) {
    const int n = spec.n;
    if (sol.node_voltages.size() != static_cast<std::size_t>(n) + 1 ||
        sol.branch_currents.size() != static_cast<std::size_t>(n))
        throw InvalidInput("dense solution does not match the network size");

    const Complex v_out = sol.node_voltages[n];
    std::vector<NodeResponse> out(n + 1);
    for (int g = 0; g < n; ++g) {
        const Complex v = sol.node_voltages[g];
        const Complex i = sol.branch_currents[g];
        if (v == Complex(0.0, 0.0))
            throw SingularGain("node voltage vanishes at node " + std::to_string(g), g);
        if (i == Complex(0.0, 0.0))
            throw SingularGain("node current vanishes at node " + std::to_string(g), g);
        out[g] = {v / i, v_out / v};
    }
    out[n] = {spec.z_out, Complex(1.0, 0.0)};
    return out;
}

}  // namespace tline
