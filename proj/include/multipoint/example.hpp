#pragma once

#include <cstddef>

#include "multipoint/model.hpp"

namespace multipoint {

/// Neumann-mode truncation of i u_t + sgn(t) u_xx = f on x in [0, 1] with
/// u(1/2, x) = e^{i psi} u(-1/2, x) and outer coupling e^{i phi}.
struct ExampleSpec {
    std::size_t modes = 1;
    double psi = 0.0;
    double phi = 0.0;

    /// modes >= 1 and both angles in [0, 2pi).
    void validate() const;
};

/// Mode n in 0..modes-1 contributes (n pi)^2 to A1 and A2 and -(n pi)^2 to A3;
/// W2 = e^{i psi} I, W1 = e^{i phi} I on (-inf,-1) u (-1/2,1/2) u (1,inf).
ProblemDefinition build_example_problem(const ExampleSpec& spec);

}  // namespace multipoint
