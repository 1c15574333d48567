#pragma once

// Brute-force nodal analysis of the ladder, independent of the recursion in
// ladder_model. Used as a verification oracle by the test suites.
//
// The system is a modified nodal formulation: node voltages, one current
// unknown per series branch (so zero-impedance branches stay well posed)
// and the current of the 1 V source at the transmitter.

#include <vector>

#include "tline/ladder_model.hpp"

namespace tline {

enum class RailLayout {
    /// Series elements of both rails summed per generation; bottom rail is
    /// the return conductor.
    Collapsed,
    /// Both rails modelled with their own nodes and branch currents.
    TwoRail,
};

/// Row-major dense complex matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n) {}

    std::size_t size() const { return n_; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    Complex operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

struct LinearSystem {
    DenseMatrix A;
    std::vector<Complex> b;
};

/// Gaussian elimination with partial pivoting followed by iterative
/// refinement. Throws SingularNetwork (generation 0) when a pivot vanishes.
std::vector<Complex> solve_dense(const DenseMatrix& A, const std::vector<Complex>& b);

/// ||A x - b||_2 / ||b||_2.
double relative_residual(const LinearSystem& system, const std::vector<Complex>& x);

struct DenseSolution {
    /// Voltage across the rails at nodes 0..n (top minus bottom).
    std::vector<Complex> node_voltages;
    /// Current through the series branch of generation g, at index g-1,
    /// flowing toward the receiver.
    std::vector<Complex> branch_currents;
    /// Current into the load at node n.
    Complex load_current;
    /// Current delivered by the source into node 0.
    Complex input_current;
    /// ||A x - b|| / ||b|| of the solved system.
    double residual = 0.0;
};

LinearSystem assemble_nodal_system(const NetworkSpec& spec, const DamageCase& damage,
                                   RailLayout layout = RailLayout::Collapsed);

/// Solves the ladder driven by a unit voltage at the transmitter.
DenseSolution nodal_solve(const NetworkSpec& spec, const DamageCase& damage,
                          RailLayout layout = RailLayout::Collapsed);

/// Largest KCL mismatch over nodes 0..n, relative to the largest branch
/// current magnitude.
double kirchhoff_residual(const DenseSolution& sol, const NetworkSpec& spec,
                          const DamageCase& damage);

/// Z_g = V_g / I_g and H_g = V_n / V_g from a nodal solution. Node n is
/// (zOut, 1) by construction.
std::vector<NodeResponse> extract_responses(const DenseSolution& sol, const NetworkSpec& spec);

}  // namespace tline
