#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multipoint/linalg.hpp"
#include "multipoint/tolerances.hpp"

namespace multipoint {

enum class IntervalId { outer_left, inner, outer_right };

std::string_view to_string(IntervalId id);
/// Throws ValidationError for anything but "outer_left", "inner", "outer_right".
IntervalId interval_from_string(std::string_view name);

/// Geometry of (-inf, a1) u (a2, b2) u (a3, +inf). The infinite pieces are
/// truncated to [a1 - T, a1] and [a3, a3 + T].
struct IntervalConfig {
    double a1 = -1.0;
    double a2 = -0.5;
    double b2 = 0.5;
    double a3 = 1.0;
    double T = 40.0;
    std::size_t n_outer = 801;
    std::size_t n_inner = 801;

    /// Throws ValidationError naming the offending fields.
    void validate() const;
    double inner_length() const noexcept { return b2 - a2; }

    bool operator==(const IntervalConfig&) const = default;
};

struct ProblemDefinition {
    std::size_t dim = 0;
    IntervalConfig intervals;
    HermitianMatrix A1, A2, A3;
    UnitaryMatrix W1, W2;
    ToleranceConfig tolerances;

    /// Checks geometry and that every matrix is dim x dim.
    void validate() const;
    const HermitianMatrix& coefficient(IntervalId id) const;

    bool operator==(const ProblemDefinition&) const = default;
};

/// H-valued function sampled on a uniform grid. The endpoints are stored
/// exactly; interior nodes are t0 + k*h and the last node is t_end itself.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(IntervalId id, double t0, double t_end, std::size_t count, std::size_t dim);

    IntervalId interval() const noexcept { return id_; }
    double t0() const noexcept { return t0_; }
    double t_end() const noexcept { return t_end_; }
    double h() const noexcept { return (t_end_ - t0_) / static_cast<double>(count_ - 1); }
    std::size_t size() const noexcept { return count_; }
    std::size_t dim() const noexcept { return dim_; }
    double node(std::size_t k) const noexcept;

    std::span<Complex> operator[](std::size_t k) { return {data_.data() + k * dim_, dim_}; }
    std::span<const Complex> operator[](std::size_t k) const { return {data_.data() + k * dim_, dim_}; }
    std::span<const Complex> front() const { return (*this)[0]; }
    std::span<const Complex> back() const { return (*this)[count_ - 1]; }

    /// Same interval id, endpoints, node count and dimension.
    bool same_grid(const GridFunction& other) const noexcept;
    /// All samples, node-major.
    std::span<const Complex> values() const noexcept { return data_; }

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(Complex s);

private:
    IntervalId id_ = IntervalId::inner;
    double t0_ = 0.0;
    double t_end_ = 1.0;
    std::size_t count_ = 0;
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator+(GridFunction a, const GridFunction& b);

/// Element of L2(H,(-inf,a1)) + L2(H,(a2,b2)) + L2(H,(a3,inf)); absent parts are zero.
struct TripleFunction {
    std::optional<GridFunction> u1;  ///< outer_left
    std::optional<GridFunction> u2;  ///< inner
    std::optional<GridFunction> u3;  ///< outer_right

    /// Common dimension of the present parts (0 if none). Throws on mismatch.
    std::size_t dim() const;
    std::optional<GridFunction>& part(IntervalId id);
    const std::optional<GridFunction>& part(IntervalId id) const;
};

/// Node counts are rounded up to the next odd number for Simpson quadrature.
std::size_t simpson_count(std::size_t n) noexcept;

/// Zero-valued grid function covering the requested interval of the problem.
GridFunction make_grid(IntervalId id, const ProblemDefinition& problem);
GridFunction make_grid(IntervalId id, const IntervalConfig& intervals, std::size_t dim);

/// Composite Simpson weights for n equally spaced nodes (3/8 rule on the last
/// panel when n is even, trapezoid for n == 2).
std::vector<double> quadrature_weights(std::size_t n, double h);

/// Simpson quadrature of (u(t), v(t))_H over a single grid.
Complex l2_inner_product(const GridFunction& u, const GridFunction& v);
/// Sum over the parts present in both u and v; parts must be present in both or neither.
Complex l2_inner_product(const TripleFunction& u, const TripleFunction& v);
double l2_norm(const GridFunction& u);
double l2_norm(const TripleFunction& u);

/// Largest ||u(t_k)||_H over the nodes.
double sup_norm(const GridFunction& u);

// Problem files -------------------------------------------------------------

/// Parses and validates a problem document. Errors name the offending field.
ProblemDefinition load_problem(std::string_view text);
ProblemDefinition load_problem_file(const std::string& path);
/// Deterministic JSON rendering of a problem (reloads to an equal problem).
std::string problem_to_json(const ProblemDefinition& problem);

/// Reads a function sample file for the given problem's grids.
GridFunction load_grid_function(std::string_view text, const ProblemDefinition& problem);
std::string grid_function_to_json(const GridFunction& f);

std::string read_text_file(const std::string& path);

}  // namespace multipoint
