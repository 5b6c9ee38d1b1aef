#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "multipoint/boundary_triplet.hpp"
#include "multipoint/errors.hpp"
#include "support.hpp"

using namespace multipoint;
namespace ts = testing_support;

namespace {

const Complex kI{0.0, 1.0};
const double kSqrt2 = std::numbers::sqrt2;

ProblemDefinition scalar_problem(double a1 = 0.0, double a2 = 0.0, double a3 = 0.0) {
    return ts::make_problem(ts::scalar_matrix(a1), ts::scalar_matrix(a2), ts::scalar_matrix(a3),
                            ts::scalar_matrix(1.0), ts::scalar_matrix(1.0), -0.5, 1.0);
}

// Outer parts with prescribed values at a1 and a3, decaying away from them.
TripleFunction with_endpoints(const ProblemDefinition& p, const CVector& x1, const CVector& x3) {
    CVector f(p.dim);
    CVector g(p.dim);
    for (std::size_t c = 0; c < p.dim; ++c) {
        f[c] = (x1[c] + x3[c]) / (kI * kSqrt2);
        g[c] = (x1[c] - x3[c]) / kSqrt2;
    }
    return construct_witness(f, g, p);
}

// Gaussian profiles vanishing (to rounding) at every finite endpoint.
TripleFunction interior_bumps(const ProblemDefinition& p, std::mt19937_64& rng) {
    TripleFunction u = construct_witness(CVector(p.dim), CVector(p.dim), p);
    const CVector v = ts::random_vector(rng, p.dim);
    const auto fill = [&](GridFunction& g, double centre) {
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double x = g.node(k) - centre;
            for (std::size_t c = 0; c < p.dim; ++c) g[k][c] = std::exp(-x * x) * v[c];
        }
    };
    fill(*u.u1, p.intervals.a1 - 8.0);
    fill(*u.u3, p.intervals.a3 + 8.0);
    return u;
}

}  // namespace

TEST_CASE("outer boundary values from endpoint samples") {
    const ProblemDefinition p = scalar_problem();
    const BoundaryValues zero = outer_gamma(with_endpoints(p, {0.0}, {0.0}));
    CHECK(std::abs((*zero.gamma1)[0]) < 1e-15);
    CHECK(std::abs((*zero.gamma2)[0]) < 1e-15);
    CHECK(!zero.Gamma1);

    const BoundaryValues bv = outer_gamma(with_endpoints(p, {kI * kSqrt2}, {0.0}));
    CHECK(std::abs((*bv.gamma1)[0] - 1.0) < 1e-15);
    CHECK(std::abs((*bv.gamma2)[0] - kI) < 1e-15);
}

TEST_CASE("inner boundary values from endpoint samples") {
    const ProblemDefinition p = scalar_problem();
    TripleFunction u;
    u.u2 = make_grid(IntervalId::inner, p);
    const BoundaryValues zero = inner_gamma(u);
    CHECK((*zero.Gamma1)[0] == Complex{});
    CHECK((*zero.Gamma2)[0] == Complex{});

    for (std::size_t k = 0; k < u.u2->size(); ++k) (*u.u2)[k][0] = 1.0;
    const BoundaryValues same = inner_gamma(u);
    CHECK(std::abs((*same.Gamma1)[0] - Complex{0.0, -kSqrt2}) < 1e-15);
    CHECK(std::abs((*same.Gamma2)[0]) < 1e-15);

    (*u.u2)[u.u2->size() - 1][0] = -1.0;
    const BoundaryValues opposite = inner_gamma(u);
    CHECK(std::abs((*opposite.Gamma1)[0]) < 1e-15);
    CHECK(std::abs((*opposite.Gamma2)[0] - kSqrt2) < 1e-15);
}

TEST_CASE("boundary maps require their parts") {
    const ProblemDefinition p = scalar_problem();
    TripleFunction only_inner;
    only_inner.u2 = make_grid(IntervalId::inner, p);
    CHECK_THROWS_AS(outer_gamma(only_inner), ValidationError);
    TripleFunction only_outer;
    only_outer.u1 = make_grid(IntervalId::outer_left, p);
    only_outer.u3 = make_grid(IntervalId::outer_right, p);
    CHECK_THROWS_AS(inner_gamma(only_outer), ValidationError);
}

TEST_CASE("witness construction") {
    const ProblemDefinition p = scalar_problem();
    const TripleFunction zero = construct_witness(CVector{0.0}, CVector{0.0}, p);
    CHECK(sup_norm(*zero.u1) == 0.0);
    CHECK(sup_norm(*zero.u2) == 0.0);
    CHECK(sup_norm(*zero.u3) == 0.0);

    const TripleFunction w = construct_witness(CVector{1.0}, CVector{0.0}, p);
    CHECK(std::abs(w.u1->back()[0] - kI / kSqrt2) < 1e-15);
    CHECK(std::abs(w.u3->front()[0] - kI / kSqrt2) < 1e-15);
    // Decays away from the finite endpoints.
    CHECK(std::abs(w.u1->front()[0]) < 1e-17);
    CHECK(std::abs(w.u3->back()[0]) < 1e-17);
    CHECK_THROWS_AS(construct_witness(CVector{1.0, 2.0}, CVector{0.0}, p), ValidationError);
}

TEST_CASE("witness round trip for random data") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 100; ++k) {
        const ProblemDefinition p = ts::random_problem(rng, 4);
        const CVector f = ts::random_vector(rng, p.dim);
        const CVector g = ts::random_vector(rng, p.dim);
        const BoundaryValues bv = outer_gamma(construct_witness(f, g, p));
        CHECK(ts::max_abs_diff(*bv.gamma1, f) <= 1e-12);
        CHECK(ts::max_abs_diff(*bv.gamma2, g) <= 1e-12);
        const BoundaryValues bi = inner_gamma(construct_inner_witness(f, g, p));
        CHECK(ts::max_abs_diff(*bi.Gamma1, f) <= 1e-12);
        CHECK(ts::max_abs_diff(*bi.Gamma2, g) <= 1e-12);
    }
}

TEST_CASE("outer Green identity on witnesses with zero coefficients") {
    const ProblemDefinition p = scalar_problem();
    std::mt19937_64 rng(32);
    for (int k = 0; k < 5; ++k) {
        const CVector f = ts::random_vector(rng, 1);
        const CVector g = ts::random_vector(rng, 1);
        const TripleFunction u = construct_witness(f, g, p);
        // Simpson error on the exponential tails at h = 0.05 is about
        // 5.6e-7 (|f|^2 + |g|^2).
        const double data = std::norm(f[0]) + std::norm(g[0]);
        CHECK(green_defect(u, u, p, TripletKind::outer) <= 6e-7 * data);
        // Both sides are purely imaginary: the form equals 2i Im(gamma1, gamma2).
        const BoundaryValues bv = outer_gamma(u);
        const Complex form = boundary_form(bv, bv, TripletKind::outer);
        CHECK(std::abs(form - 2.0 * kI * dot(*bv.gamma1, *bv.gamma2).imag()) < 1e-14);
    }
}

TEST_CASE("outer Green identity holds with the orientation reversed") {
    // Integration by parts gives <Lu,u> - <u,Lu> = i(|u1(a1)|^2 - |u3(a3)|^2),
    // which is minus the form (g1 u, g2 u) - (g2 u, g1 u) of the outer maps.
    const ProblemDefinition p = scalar_problem();
    const TripleFunction u = construct_witness(CVector{1.0}, CVector{kI}, p);
    const BoundaryValues bv = outer_gamma(u);
    const Complex form = boundary_form(bv, bv, TripletKind::outer);
    const Complex x1 = u.u1->back()[0];
    const Complex x3 = u.u3->front()[0];
    const Complex by_parts = kI * (std::norm(x1) - std::norm(x3));
    CHECK(std::abs(by_parts + form) < 1e-14);
    CHECK(std::abs(form) > 1.0);
    CHECK(green_defect(u, u, p, TripletKind::outer) < 1.2e-6);
}

TEST_CASE("Green identities on smooth decaying functions") {
    std::mt19937_64 rng(33);
    for (int k = 0; k < 5; ++k) {
        const ProblemDefinition p = ts::random_problem(rng, 2);
        const TripleFunction u = interior_bumps(p, rng);
        const TripleFunction v = interior_bumps(p, rng);
        CHECK(green_defect(u, v, p, TripletKind::outer) <= 1e-6);
        const TripleFunction wu =
            construct_witness(ts::random_vector(rng, p.dim), ts::random_vector(rng, p.dim), p);
        const TripleFunction wv =
            construct_witness(ts::random_vector(rng, p.dim), ts::random_vector(rng, p.dim), p);
        CHECK(green_defect(wu, wv, p, TripletKind::outer) <= 1e-5);
        const TripleFunction iu =
            construct_inner_witness(ts::random_vector(rng, p.dim), ts::random_vector(rng, p.dim), p);
        const TripleFunction iv =
            construct_inner_witness(ts::random_vector(rng, p.dim), ts::random_vector(rng, p.dim), p);
        CHECK(green_defect(iu, iv, p, TripletKind::inner) <= 1e-6);
    }
}

TEST_CASE("inner Green defect shrinks under refinement") {
    std::mt19937_64 rng(34);
    ProblemDefinition p = ts::random_problem(rng, 2);
    const CVector v = ts::random_vector(rng, p.dim);
    const auto defect = [&](std::size_t n) {
        p.intervals.n_inner = n;
        TripleFunction u;
        u.u2 = make_grid(IntervalId::inner, p);
        for (std::size_t k = 0; k < u.u2->size(); ++k) {
            const double x = u.u2->node(k);
            for (std::size_t c = 0; c < p.dim; ++c) (*u.u2)[k][c] = std::exp(Complex{0.0, 5.0 * x}) * v[c] * (1.0 + x);
        }
        return green_defect(u, u, p, TripletKind::inner);
    };
    const double coarse = defect(21);
    const double fine = defect(81);
    CHECK(fine < coarse);
    CHECK(fine < 1e-6);
}

TEST_CASE("outer condition through boundary values") {
    std::mt19937_64 rng(35);
    for (int k = 0; k < 20; ++k) {
        const ProblemDefinition p = ts::random_problem(rng, 4);
        const CVector x1 = ts::random_vector(rng, p.dim);
        const CVector x3 = p.W1.matrix() * std::span<const Complex>(x1);
        CHECK(outer_condition_residual(outer_gamma(with_endpoints(p, x1, x3)), p.W1) < 1e-12);
        CVector off = x3;
        off[0] += 0.25;
        const double r = outer_condition_residual(outer_gamma(with_endpoints(p, x1, off)), p.W1);
        CHECK(r == doctest::Approx(0.25 * kSqrt2).epsilon(1e-12));
    }
}

TEST_CASE("Green defect rejects mismatched grids") {
    ProblemDefinition p = scalar_problem();
    const TripleFunction u = construct_witness(CVector{1.0}, CVector{0.0}, p);
    p.intervals.n_outer = 401;
    const TripleFunction v = construct_witness(CVector{1.0}, CVector{0.0}, p);
    CHECK_THROWS_AS(green_defect(u, v, p, TripletKind::outer), ValidationError);
}
