#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "multipoint/finite_difference.hpp"
#include "multipoint/linalg.hpp"
#include "multipoint/model.hpp"
#include "multipoint/spectrum.hpp"

// Ground truth built from primitives disjoint from the main spectral path:
// Runge-Kutta integration and LU determinants instead of Jacobi rotations
// and Cayley transforms.

namespace multipoint {

struct SweepConfig {
    Window window{-15.0, 15.0};
    std::size_t samples = 4096;
    std::size_t rk4_steps = 2048;
    double refine_tol = 1e-11;

    void validate() const;
};

struct SweepResult {
    std::vector<double> roots;          ///< ascending
    std::vector<std::string> warnings;  ///< unresolved clusters
};

struct MatchReport {
    std::size_t matched = 0;
    std::vector<double> unmatched_main;
    std::vector<double> unmatched_oracle;
    double max_distance = 0.0;

    bool all_matched() const noexcept { return unmatched_main.empty() && unmatched_oracle.empty(); }
};

/// Phi(delta) for Phi' = i(A2 - lambda) Phi, Phi(0) = I, by classical RK4.
ComplexMatrix rk4_fundamental(const HermitianMatrix& a2, Complex lambda, double delta, std::size_t steps);

/// Roots of det(W2 - Phi_lambda(b2 - a2)) in the window.
SweepResult det_sweep_eigenvalues(const ProblemDefinition& problem, const SweepConfig& cfg);

/// Finite-difference evaluation of i u' + A u - lambda u on u's grid, with A
/// the coefficient of u's interval.
GridFunction apply_expression(const ProblemDefinition& problem, IntervalId id, const GridFunction& u, Complex lambda,
                              int order = kVerificationOrder);

/// Greedy nearest-neighbour matching of eigenvalues within tol.
MatchReport compare_spectra(const SpectrumReport& main, const std::vector<double>& oracle_roots, double tol);

}  // namespace multipoint
