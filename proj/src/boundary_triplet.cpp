#include "multipoint/boundary_triplet.hpp"

#include <cmath>
#include <numbers>

#include "multipoint/errors.hpp"
#include "multipoint/oracle.hpp"

namespace multipoint {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

const GridFunction& require(const TripleFunction& u, IntervalId id) {
    const auto& part = u.part(id);
    if (!part) throw ValidationError("missing part: " + std::string(to_string(id)));
    return *part;
}

// (x + y) / (i sqrt2) and (x - y) / sqrt2.
std::pair<CVector, CVector> pair_from(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) throw ValidationError("boundary values: dimension mismatch");
    CVector b1(x.size());
    CVector b2(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) {
        b1[c] = (x[c] + y[c]) * kInvSqrt2 / kI;
        b2[c] = (x[c] - y[c]) * kInvSqrt2;
    }
    return {b1, b2};
}

void check_lengths(std::span<const Complex> f, std::span<const Complex> g, std::size_t dim) {
    if (f.size() != dim || g.size() != dim) throw ValidationError("witness: vectors must have length d");
}

GridFunction expression(const ProblemDefinition& problem, IntervalId id, const GridFunction& u) {
    return apply_expression(problem, id, u, 0.0);
}

Complex antisymmetric_part(const ProblemDefinition& problem, IntervalId id, const GridFunction& u,
                           const GridFunction& v) {
    if (!u.same_grid(v)) throw ValidationError("grid mismatch on " + std::string(to_string(id)));
    return l2_inner_product(expression(problem, id, u), v) - l2_inner_product(u, expression(problem, id, v));
}

}  // namespace

BoundaryValues outer_gamma(const TripleFunction& u) {
    const GridFunction& u1 = require(u, IntervalId::outer_left);
    const GridFunction& u3 = require(u, IntervalId::outer_right);
    BoundaryValues bv;
    auto [g1, g2] = pair_from(u1.back(), u3.front());
    bv.gamma1 = std::move(g1);
    bv.gamma2 = std::move(g2);
    return bv;
}

BoundaryValues inner_gamma(const TripleFunction& u) {
    const GridFunction& u2 = require(u, IntervalId::inner);
    BoundaryValues bv;
    auto [g1, g2] = pair_from(u2.front(), u2.back());
    bv.Gamma1 = std::move(g1);
    bv.Gamma2 = std::move(g2);
    return bv;
}

TripleFunction construct_witness(std::span<const Complex> f, std::span<const Complex> g,
                                 const ProblemDefinition& problem) {
    const std::size_t d = problem.dim;
    check_lengths(f, g, d);
    const double a1 = problem.intervals.a1;
    const double a3 = problem.intervals.a3;
    TripleFunction w;
    GridFunction u1 = make_grid(IntervalId::outer_left, problem);
    GridFunction u3 = make_grid(IntervalId::outer_right, problem);
    for (std::size_t k = 0; k < u1.size(); ++k) {
        const double s = std::exp(u1.node(k) - a1);
        for (std::size_t c = 0; c < d; ++c) u1[k][c] = s * (kI * f[c] + g[c]) * kInvSqrt2;
    }
    for (std::size_t k = 0; k < u3.size(); ++k) {
        const double s = std::exp(a3 - u3.node(k));
        for (std::size_t c = 0; c < d; ++c) u3[k][c] = s * (kI * f[c] - g[c]) * kInvSqrt2;
    }
    w.u1 = std::move(u1);
    w.u2 = make_grid(IntervalId::inner, problem);
    w.u3 = std::move(u3);
    return w;
}

TripleFunction construct_inner_witness(std::span<const Complex> f, std::span<const Complex> g,
                                       const ProblemDefinition& problem) {
    const std::size_t d = problem.dim;
    check_lengths(f, g, d);
    GridFunction u2 = make_grid(IntervalId::inner, problem);
    const std::size_t last = u2.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(last);
        for (std::size_t c = 0; c < d; ++c) {
            const Complex left = (kI * f[c] + g[c]) * kInvSqrt2;
            const Complex right = (kI * f[c] - g[c]) * kInvSqrt2;
            u2[k][c] = k == last ? right : (1.0 - s) * left + s * right;
        }
    }
    TripleFunction w;
    w.u1 = make_grid(IntervalId::outer_left, problem);
    w.u2 = std::move(u2);
    w.u3 = make_grid(IntervalId::outer_right, problem);
    return w;
}

Complex boundary_form(const BoundaryValues& u, const BoundaryValues& v, TripletKind which) {
    const bool outer = which == TripletKind::outer;
    const auto& u1 = outer ? u.gamma1 : u.Gamma1;
    const auto& u2 = outer ? u.gamma2 : u.Gamma2;
    const auto& v1 = outer ? v.gamma1 : v.Gamma1;
    const auto& v2 = outer ? v.gamma2 : v.Gamma2;
    if (!u1 || !u2 || !v1 || !v2) throw ValidationError("boundary_form: boundary values for the triplet are absent");
    return dot(*u1, *v2) - dot(*u2, *v1);
}

double green_defect(const TripleFunction& u, const TripleFunction& v, const ProblemDefinition& problem,
                    TripletKind which) {
    if (which == TripletKind::outer) {
        const Complex lhs = antisymmetric_part(problem, IntervalId::outer_left, require(u, IntervalId::outer_left),
                                               require(v, IntervalId::outer_left)) +
                            antisymmetric_part(problem, IntervalId::outer_right, require(u, IntervalId::outer_right),
                                               require(v, IntervalId::outer_right));
        return std::abs(lhs + boundary_form(outer_gamma(u), outer_gamma(v), which));
    }
    const Complex lhs =
        antisymmetric_part(problem, IntervalId::inner, require(u, IntervalId::inner), require(v, IntervalId::inner));
    return std::abs(lhs - boundary_form(inner_gamma(u), inner_gamma(v), which));
}

double outer_condition_residual(const BoundaryValues& bv, const UnitaryMatrix& w1) {
    if (!bv.gamma1 || !bv.gamma2) throw ValidationError("outer_condition_residual: outer boundary values absent");
    const ComplexMatrix& w = w1.matrix();
    const std::size_t d = w.rows();
    if (bv.gamma1->size() != d || bv.gamma2->size() != d) throw ValidationError("outer_condition_residual: dimension mismatch");
    const CVector wg1 = w * std::span<const Complex>(*bv.gamma1);
    const CVector wg2 = w * std::span<const Complex>(*bv.gamma2);
    CVector r(d);
    for (std::size_t c = 0; c < d; ++c) {
        r[c] = kI * ((*bv.gamma1)[c] - wg1[c]) - ((*bv.gamma2)[c] + wg2[c]);
    }
    return norm(r);
}

}  // namespace multipoint
