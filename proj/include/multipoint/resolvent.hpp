#pragma once

#include <optional>
#include <span>

#include "multipoint/errors.hpp"
#include "multipoint/linalg.hpp"
#include "multipoint/model.hpp"
#include "multipoint/spectrum.hpp"

namespace multipoint {

struct ResolventSolution {
    TripleFunction u;
    std::optional<CVector> f1star;  ///< u1(a1) for Im lambda > 0
    std::optional<CVector> f2star;  ///< homogeneous part of u2 at a2
    std::optional<CVector> f3star;  ///< u3(a3) for Im lambda < 0
    Complex lambda;
    double residual_ode = 0.0;  ///< sup of |iu' + Au - lambda u - f| over every computed part
    double residual_bc = 0.0;   ///< largest boundary-condition mismatch
};

/// Raised by the inner solve when lambda is (numerically) an eigenvalue.
class PointSpectrumError : public NumericalError {
public:
    PointSpectrumError(const std::string& what, SpectrumEntry nearest)
        : NumericalError(what), nearest_(std::move(nearest)) {}
    const SpectrumEntry& nearest() const noexcept { return nearest_; }

private:
    SpectrumEntry nearest_;
};

/// Resolvent of the outer component. f1 lives on a grid ending at a1 and f3 on
/// a grid starting at a3 (the truncation length may differ from the problem's).
/// Throws ValidationError when Im lambda = 0.
ResolventSolution resolvent_outer(const ProblemDefinition& problem, Complex lambda, const GridFunction& f1,
                                  const GridFunction& f3);

/// Resolvent of the inner component; lambda may be real off the point spectrum.
/// Throws PointSpectrumError when the boundary solve is singular.
ResolventSolution resolvent_inner(const ProblemDefinition& problem, Complex lambda, const GridFunction& f2);

/// Direct-sum resolvent. Absent parts of f are zero. Requires Im lambda != 0.
ResolventSolution apply_resolvent(const ProblemDefinition& problem, Complex lambda, const TripleFunction& f);

/// Applies the outer resolvent at lambda = lambda_r + i lambda_i to
/// f*(t) = (0, 0, e^{i(A3 - conj(lambda))(t - a3)} v). The outer grids keep the
/// problem's step and are lengthened to max(T, 40 / min(1, lambda_i)).
ProbeResult resolvent_norm_probe(const ProblemDefinition& problem, double lambda_i, double lambda_r,
                                 std::span<const Complex> f3vec);

}  // namespace multipoint
