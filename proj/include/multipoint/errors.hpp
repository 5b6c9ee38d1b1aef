#pragma once

#include <stdexcept>
#include <string>

namespace multipoint {

/// Malformed input: bad documents, broken invariants, violated preconditions.
/// The CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation that could not produce a trustworthy result. Exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double residual)
        : NumericalError(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class SingularMatrixError : public NumericalError {
public:
    SingularMatrixError(const std::string& what, double pivot)
        : NumericalError(what), pivot_(pivot) {}

    double pivot() const noexcept { return pivot_; }

private:
    double pivot_;
};

}  // namespace multipoint
