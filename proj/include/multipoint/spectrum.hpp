#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "multipoint/json_format.hpp"
#include "multipoint/linalg.hpp"
#include "multipoint/model.hpp"

namespace multipoint {

/// Closed window [lo, hi] on the real line. lo > hi denotes the empty window.
struct Window {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
    bool empty() const noexcept { return lo > hi; }
};

/// One eigenvalue of the inner component.
struct SpectrumEntry {
    double lambda = 0.0;
    Complex mu;                 ///< monodromy eigenvalue, |mu| = 1
    double theta = 0.0;         ///< arg mu in [0, 2pi)
    long long branch_n = 0;     ///< lambda = (theta + 2 pi n) / (b2 - a2)
    std::size_t mode = 0;       ///< index of the monodromy eigenpair
    CVector eigvec;             ///< f2*, unit norm, phase-normalized
    double ode_residual = 0.0;  ///< sup over nodes of |i u' + A2 u - lambda u|
    double bc_residual = 0.0;   ///< |u(b2) - W2 u(a2)|
};

/// Resolvent-norm evidence attached to a report: ratio ~ 1/(2 lambda_i).
struct ProbeResult {
    double lambda_i = 0.0;
    double lambda_r = 0.0;
    double ratio = 0.0;       ///< ||(R f*) restricted to (a3, inf)|| / ||f*||
    double full_ratio = 0.0;  ///< ||R f*|| / ||f*|| over all intervals
    double bound = 0.0;       ///< 1/(2 lambda_i)
};

struct SpectrumReport {
    Window window;
    double inner_length = 0.0;
    std::vector<SpectrumEntry> entries;  ///< ascending by lambda
    std::vector<ProbeResult> probes;
};

/// W2^* e^{i A2 (b2 - a2)}.
UnitaryMatrix monodromy(const ProblemDefinition& problem);

/// Eigenvalues of the inner extension inside the window, with eigenvectors and residuals.
SpectrumReport point_spectrum(const ProblemDefinition& problem, Window window);

/// u2(t) = e^{i(A2 - lambda)(t - a2)} f2* on the inner grid. Throws for f2* = 0.
GridFunction eigenfunction_inner(const ProblemDefinition& problem, double lambda, std::span<const Complex> f2star);

/// max_t | ||u1(t)|| - ||f1*|| | for the candidate eigenfunction
/// u1(t) = e^{i(A1 - lambda)(t - a1)} f1* on the outer-left grid. A constant
/// norm means u1 cannot be square integrable on (-inf, a1). Throws
/// ValidationError for non-real lambda.
double outer_norm_constancy(const ProblemDefinition& problem, Complex lambda, std::span<const Complex> f1star);

/// Point spectrum plus the spectrum classification and probe evidence.
SpectrumReport assemble_report(const ProblemDefinition& problem, Window window,
                               std::span<const ProbeResult> probes = {});

/// Classification metadata carried by every report.
Json classification_json();
Json report_to_json(const SpectrumReport& report);
/// Columns: lambda, theta, branch_n, mode_j, ode_residual, bc_residual.
std::string report_to_csv(const SpectrumReport& report);

/// Principal argument in [0, 2pi); values within 1e-14 of 2pi wrap to 0.
double principal_argument(Complex z);

}  // namespace multipoint
