#pragma once

namespace multipoint {

/// Numerical thresholds used across the library. Every field may be
/// overridden from the "tolerances" object of a problem file.
struct ToleranceConfig {
    /// Jacobi stops once the off-diagonal Frobenius mass is below eig_tol * ||A||_F.
    double eig_tol = 1e-13;
    /// max |M - M^*| allowed relative to (1 + max |M|) for Hermitian inputs.
    double hermitian_tol = 1e-12;
    /// max |U^*U - I| allowed for unitary inputs.
    double unitary_tol = 1e-10;
    /// Pass threshold for boundary-condition residuals.
    double residual_tol = 1e-9;
    /// Relative budget for quadrature-based checks (probe ratios, Green defects).
    double quadrature_rtol = 1e-3;

    bool operator==(const ToleranceConfig&) const = default;
};

}  // namespace multipoint
