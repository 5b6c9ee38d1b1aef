#include "multipoint/example.hpp"

#include <cmath>
#include <numbers>

#include "multipoint/errors.hpp"

namespace multipoint {

void ExampleSpec::validate() const {
    if (modes < 1) throw ValidationError("modes: must be >= 1");
    const double two_pi = 2.0 * std::numbers::pi;
    if (!(psi >= 0.0 && psi < two_pi)) throw ValidationError("psi: must lie in [0, 2pi)");
    if (!(phi >= 0.0 && phi < two_pi)) throw ValidationError("phi: must lie in [0, 2pi)");
}

ProblemDefinition build_example_problem(const ExampleSpec& spec) {
    spec.validate();
    const std::size_t d = spec.modes;
    CVector laplace(d);
    CVector reflected(d);
    for (std::size_t n = 0; n < d; ++n) {
        const double k = static_cast<double>(n) * std::numbers::pi;
        laplace[n] = k * k;
        reflected[n] = -k * k;
    }
    ProblemDefinition p;
    p.dim = d;
    p.intervals.a1 = -1.0;
    p.intervals.a2 = -0.5;
    p.intervals.b2 = 0.5;
    p.intervals.a3 = 1.0;
    p.A1 = HermitianMatrix(ComplexMatrix::diagonal(laplace));
    p.A2 = HermitianMatrix(ComplexMatrix::diagonal(laplace));
    p.A3 = HermitianMatrix(ComplexMatrix::diagonal(reflected));
    p.W1 = UnitaryMatrix(std::polar(1.0, spec.phi) * ComplexMatrix::identity(d));
    p.W2 = UnitaryMatrix(std::polar(1.0, spec.psi) * ComplexMatrix::identity(d));
    p.validate();
    return p;
}

}  // namespace multipoint
