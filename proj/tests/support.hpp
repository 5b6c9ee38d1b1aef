#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "multipoint/linalg.hpp"
#include "multipoint/model.hpp"

namespace testing_support {

using multipoint::Complex;
using multipoint::ComplexMatrix;
using multipoint::CVector;

inline CVector random_vector(std::mt19937_64& rng, std::size_t d) {
    std::normal_distribution<double> normal;
    CVector v(d);
    for (auto& c : v) c = Complex{normal(rng), normal(rng)};
    return v;
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t d) {
    const CVector e = random_vector(rng, d * d);
    return ComplexMatrix(d, d, e);
}

/// Hermitian with spectral norm at most max_norm (Frobenius scaling).
inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t d, double max_norm) {
    const ComplexMatrix g = random_matrix(rng, d);
    ComplexMatrix h = 0.5 * (g + g.adjoint());
    std::uniform_real_distribution<double> scale(0.2, 1.0);
    const double f = h.frobenius_norm();
    if (f > 0.0) h = Complex{scale(rng) * max_norm / f} * h;
    for (std::size_t r = 0; r < d; ++r) h(r, r) = Complex{h(r, r).real(), 0.0};
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = r + 1; c < d; ++c) h(c, r) = std::conj(h(r, c));
    return h;
}

/// Haar-like unitary from modified Gram-Schmidt on a complex Gaussian matrix.
inline ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t d) {
    const ComplexMatrix g = random_matrix(rng, d);
    std::vector<CVector> cols;
    for (std::size_t c = 0; c < d; ++c) {
        CVector v = g.column(c);
        for (int pass = 0; pass < 2; ++pass) {
            for (const CVector& q : cols) {
                const Complex p = multipoint::dot(v, q);
                for (std::size_t k = 0; k < d; ++k) v[k] -= p * q[k];
            }
        }
        const double n = multipoint::norm(v);
        for (auto& x : v) x /= n;
        cols.push_back(v);
    }
    ComplexMatrix u(d, d);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) u(r, c) = cols[c][r];
    return u;
}

inline multipoint::ProblemDefinition make_problem(const ComplexMatrix& a1, const ComplexMatrix& a2,
                                                  const ComplexMatrix& a3, const ComplexMatrix& w1,
                                                  const ComplexMatrix& w2, double a2_left, double delta) {
    multipoint::ProblemDefinition p;
    p.dim = a2.rows();
    p.intervals.a1 = a2_left - 0.5;
    p.intervals.a2 = a2_left;
    p.intervals.b2 = a2_left + delta;
    p.intervals.a3 = a2_left + delta + 0.5;
    p.A1 = multipoint::HermitianMatrix(a1);
    p.A2 = multipoint::HermitianMatrix(a2);
    p.A3 = multipoint::HermitianMatrix(a3);
    p.W1 = multipoint::UnitaryMatrix(w1);
    p.W2 = multipoint::UnitaryMatrix(w2);
    p.validate();
    return p;
}

/// Random problem with d <= max_dim, Hermitian coefficients of norm <= 5 and
/// inner length in [0.5, 3].
inline multipoint::ProblemDefinition random_problem(std::mt19937_64& rng, std::size_t max_dim = 4) {
    std::uniform_int_distribution<std::size_t> dim(1, max_dim);
    std::uniform_real_distribution<double> delta(0.5, 3.0);
    std::uniform_real_distribution<double> left(-2.0, 1.0);
    const std::size_t d = dim(rng);
    const ComplexMatrix a1 = random_hermitian(rng, d, 5.0);
    const ComplexMatrix a2 = random_hermitian(rng, d, 5.0);
    const ComplexMatrix a3 = random_hermitian(rng, d, 5.0);
    const ComplexMatrix w1 = random_unitary(rng, d);
    const ComplexMatrix w2 = random_unitary(rng, d);
    const double l = left(rng);
    return make_problem(a1, a2, a3, w1, w2, l, delta(rng));
}

inline ComplexMatrix scalar_matrix(Complex z) { return ComplexMatrix(1, 1, {z}); }

/// Real roots of det(A - xI) for Hermitian A by sign changes on a fine scan
/// plus bisection; independent of any eigensolver.
inline std::vector<double> hermitian_eigenvalues_by_det(const ComplexMatrix& a, double bound) {
    const std::size_t d = a.rows();
    const auto f = [&](double x) {
        ComplexMatrix m = a;
        for (std::size_t k = 0; k < d; ++k) m(k, k) -= x;
        return multipoint::det(m).real();
    };
    std::vector<double> roots;
    const int n = 20000;
    double prev_x = -bound;
    double prev_f = f(prev_x);
    for (int k = 1; k <= n; ++k) {
        const double x = -bound + 2.0 * bound * k / n;
        const double fx = f(x);
        if ((prev_f < 0) != (fx < 0)) {
            double lo = prev_x, hi = x, flo = prev_f;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + std::abs(lo)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if ((fm < 0) == (flo < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace testing_support
