#include "multipoint/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>

#include "multipoint/oracle.hpp"

namespace multipoint {

namespace {

constexpr Complex kI{0.0, 1.0};

// w_k = int_{x_0}^{x_k} e^{z (x_k - s)} g(s) ds on uniform nodes. Each step
// integrates G(s) = e^{z (x_{k+1} - s)} g(s) exactly against its degree-7
// interpolant through the eight surrounding nodes (fewer on short grids).
std::vector<Complex> cumulative_convolution(const std::vector<Complex>& g, Complex z, double h) {
    const std::size_t n = g.size();
    std::vector<Complex> w(n, Complex{});
    if (n < 2) return w;
    const std::size_t width = std::min<std::size_t>(8, n);
    const auto last_rel = static_cast<std::ptrdiff_t>(width) - 2;

    // weights[rel][m] = int_rel^{rel+1} L_m(x) dx for the Lagrange basis on 0..width-1,
    // by four-point Gauss-Legendre (exact for degree 7).
    static constexpr double kGaussX[] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                         0.8611363115940526};
    static constexpr double kGaussW[] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                         0.3478548451374538};
    std::vector<std::vector<double>> weights(width - 1, std::vector<double>(width, 0.0));
    for (std::size_t rel = 0; rel + 1 < width; ++rel) {
        for (int q = 0; q < 4; ++q) {
            const double x = static_cast<double>(rel) + 0.5 * (1.0 + kGaussX[q]);
            for (std::size_t m = 0; m < width; ++m) {
                double l = 1.0;
                for (std::size_t j = 0; j < width; ++j) {
                    if (j != m) l *= (x - static_cast<double>(j)) / (static_cast<double>(m) - static_cast<double>(j));
                }
                weights[rel][m] += 0.5 * kGaussW[q] * l;
            }
        }
    }
    // e^{z h o} for offsets o = k + 1 - m in [2 - width, width - 1].
    const auto offset0 = static_cast<std::ptrdiff_t>(width);
    std::vector<Complex> factor(2 * width + 1);
    for (std::ptrdiff_t o = 2 - offset0; o <= offset0 - 1; ++o) {
        factor[static_cast<std::size_t>(o + offset0)] = std::exp(z * (h * static_cast<double>(o)));
    }
    const Complex step = factor[static_cast<std::size_t>(1 + offset0)];
    const auto half = static_cast<std::ptrdiff_t>(width / 2) - 1;

    for (std::size_t k = 0; k + 1 < n; ++k) {
        const std::ptrdiff_t j0 = std::clamp(static_cast<std::ptrdiff_t>(k) - half, std::ptrdiff_t{0},
                                             static_cast<std::ptrdiff_t>(n - width));
        const std::ptrdiff_t rel = std::min(static_cast<std::ptrdiff_t>(k) - j0, last_rel);
        Complex integral{};
        for (std::size_t m = 0; m < width; ++m) {
            const std::ptrdiff_t o = rel + 1 - static_cast<std::ptrdiff_t>(m);
            integral += weights[static_cast<std::size_t>(rel)][m] * factor[static_cast<std::size_t>(o + offset0)] *
                        g[static_cast<std::size_t>(j0) + m];
        }
        w[k + 1] = step * w[k] + h * integral;
    }
    return w;
}

enum class Direction { from_start, to_end };

// int e^{i(A - lambda)(t - s)} f(s) ds over [t0, t] (from_start) or [t, t_end] (to_end).
GridFunction convolve(const HermitianEig& eig, Complex lambda, const GridFunction& f, Direction dir) {
    const std::size_t n = f.size();
    const std::size_t d = f.dim();
    const ComplexMatrix vh = eig.vectors.adjoint();
    std::vector<std::vector<Complex>> channels(d, std::vector<Complex>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const CVector c = vh * f[k];
        const std::size_t dst = dir == Direction::from_start ? k : n - 1 - k;
        for (std::size_t j = 0; j < d; ++j) channels[j][dst] = c[j];
    }
    for (std::size_t j = 0; j < d; ++j) {
        const Complex z = kI * (eig.eigenvalues[j] - lambda);
        channels[j] = cumulative_convolution(channels[j], dir == Direction::from_start ? z : -z, f.h());
    }
    GridFunction out = f;
    CVector c(d);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = dir == Direction::from_start ? k : n - 1 - k;
        for (std::size_t j = 0; j < d; ++j) c[j] = channels[j][src];
        const CVector u = eig.vectors * std::span<const Complex>(c);
        std::copy(u.begin(), u.end(), out[k].begin());
    }
    return out;
}

// e^{i(A - lambda)(t - t_ref)} v on the nodes of `grid`.
GridFunction propagate(const HermitianEig& eig, Complex lambda, GridFunction grid, double t_ref,
                       std::span<const Complex> v) {
    const std::size_t d = grid.dim();
    const CVector coeff = eig.vectors.adjoint() * v;
    CVector scaled(d);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double tau = grid.node(k) - t_ref;
        for (std::size_t j = 0; j < d; ++j) scaled[j] = coeff[j] * std::exp(kI * (eig.eigenvalues[j] - lambda) * tau);
        const CVector u = eig.vectors * std::span<const Complex>(scaled);
        std::copy(u.begin(), u.end(), grid[k].begin());
    }
    return grid;
}

double expression_residual(const ProblemDefinition& problem, IntervalId id, const GridFunction& u,
                           const GridFunction& f, Complex lambda) {
    GridFunction r = apply_expression(problem, id, u, lambda);
    r -= f;
    return sup_norm(r);
}

double mismatch(std::span<const Complex> lhs, const ComplexMatrix& w, std::span<const Complex> rhs) {
    const CVector wr = w * rhs;
    CVector diff(lhs.size());
    for (std::size_t c = 0; c < lhs.size(); ++c) diff[c] = lhs[c] - wr[c];
    return norm(diff);
}

void check_part(const GridFunction& f, IntervalId id, const ProblemDefinition& problem) {
    const std::string name(to_string(id));
    if (f.interval() != id) throw ValidationError(name + ": function belongs to a different interval");
    if (f.dim() != problem.dim) throw ValidationError(name + ": dimension mismatch");
    const IntervalConfig& iv = problem.intervals;
    const bool anchored = (id == IntervalId::outer_left && f.t_end() == iv.a1) ||
                          (id == IntervalId::outer_right && f.t0() == iv.a3) ||
                          (id == IntervalId::inner && f.t0() == iv.a2 && f.t_end() == iv.b2);
    if (!anchored) throw ValidationError(name + ": grid does not match the interval endpoints");
    if (f.size() < 3) throw ValidationError(name + ": grid too short (< 3 points)");
}

void require_nonreal(Complex lambda) {
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
        throw ValidationError("lambda: must be finite");
    }
    if (lambda.imag() == 0.0) {
        throw ValidationError("lambda: Im lambda must be nonzero (the real axis is the spectrum)");
    }
}

SpectrumEntry nearest_entry(const ProblemDefinition& problem, Complex lambda) {
    const double reach = 2.0 * std::numbers::pi / problem.intervals.inner_length() + 1.0;
    const SpectrumReport report = point_spectrum(problem, Window{lambda.real() - reach, lambda.real() + reach});
    SpectrumEntry best;
    double best_distance = std::numeric_limits<double>::infinity();
    for (const SpectrumEntry& e : report.entries) {
        const double dist = std::abs(e.lambda - lambda);
        if (dist < best_distance) {
            best_distance = dist;
            best = e;
        }
    }
    return best;
}

}  // namespace

ResolventSolution resolvent_outer(const ProblemDefinition& problem, Complex lambda, const GridFunction& f1,
                                  const GridFunction& f3) {
    require_nonreal(lambda);
    check_part(f1, IntervalId::outer_left, problem);
    check_part(f3, IntervalId::outer_right, problem);
    const HermitianEig eig1 = herm_eig(problem.A1, problem.tolerances.eig_tol);
    const HermitianEig eig3 = herm_eig(problem.A3, problem.tolerances.eig_tol);
    const ComplexMatrix& w1 = problem.W1.matrix();

    ResolventSolution sol;
    sol.lambda = lambda;
    GridFunction u1;
    GridFunction u3;
    if (lambda.imag() > 0.0) {
        u3 = convolve(eig3, lambda, f3, Direction::to_end);
        u3 *= kI;
        const CVector star = w1.adjoint() * u3.front();
        u1 = propagate(eig1, lambda, f1, problem.intervals.a1, star);
        GridFunction tail = convolve(eig1, lambda, f1, Direction::to_end);
        tail *= kI;
        u1 += tail;
        sol.f1star = star;
    } else {
        u1 = convolve(eig1, lambda, f1, Direction::from_start);
        u1 *= -kI;
        const CVector star = w1 * u1.back();
        u3 = propagate(eig3, lambda, f3, problem.intervals.a3, star);
        GridFunction head = convolve(eig3, lambda, f3, Direction::from_start);
        head *= -kI;
        u3 += head;
        sol.f3star = star;
    }
    sol.residual_ode = std::max(expression_residual(problem, IntervalId::outer_left, u1, f1, lambda),
                                expression_residual(problem, IntervalId::outer_right, u3, f3, lambda));
    sol.residual_bc = mismatch(u3.front(), w1, u1.back());
    sol.u.u1 = std::move(u1);
    sol.u.u3 = std::move(u3);
    return sol;
}

ResolventSolution resolvent_inner(const ProblemDefinition& problem, Complex lambda, const GridFunction& f2) {
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) throw ValidationError("lambda: must be finite");
    check_part(f2, IntervalId::inner, problem);
    const HermitianEig eig2 = herm_eig(problem.A2, problem.tolerances.eig_tol);
    const ComplexMatrix& w2 = problem.W2.matrix();

    GridFunction up = convolve(eig2, lambda, f2, Direction::from_start);
    up *= -kI;
    const ComplexMatrix phi = shifted_propagator(eig2, lambda, problem.intervals.inner_length());
    const CVector w2_start = w2 * up.front();
    CVector rhs(problem.dim);
    for (std::size_t c = 0; c < problem.dim; ++c) rhs[c] = up.back()[c] - w2_start[c];

    CVector star;
    try {
        star = solve_linear(w2 - phi, rhs, 1e-13 * (w2.max_abs() + phi.max_abs()));
    } catch (const SingularMatrixError&) {
        std::ostringstream os;
        os << "lambda = " << format_double(lambda.real()) << (lambda.imag() < 0 ? " - " : " + ")
           << format_double(std::abs(lambda.imag())) << "i is in the point spectrum of the inner component";
        throw PointSpectrumError(os.str(), nearest_entry(problem, lambda));
    }

    GridFunction u2 = propagate(eig2, lambda, f2, problem.intervals.a2, star);
    u2 += up;
    ResolventSolution sol;
    sol.lambda = lambda;
    sol.f2star = star;
    sol.residual_ode = expression_residual(problem, IntervalId::inner, u2, f2, lambda);
    sol.residual_bc = mismatch(u2.back(), w2, u2.front());
    sol.u.u2 = std::move(u2);
    return sol;
}

ResolventSolution apply_resolvent(const ProblemDefinition& problem, Complex lambda, const TripleFunction& f) {
    require_nonreal(lambda);
    const std::size_t d = f.dim();
    if (d != 0 && d != problem.dim) throw ValidationError("f: dimension mismatch");
    const auto part_or_zero = [&](IntervalId id) {
        const auto& p = f.part(id);
        return p ? *p : make_grid(id, problem);
    };
    ResolventSolution outer =
        resolvent_outer(problem, lambda, part_or_zero(IntervalId::outer_left), part_or_zero(IntervalId::outer_right));
    ResolventSolution inner = resolvent_inner(problem, lambda, part_or_zero(IntervalId::inner));

    ResolventSolution sol;
    sol.lambda = lambda;
    sol.u.u1 = std::move(outer.u.u1);
    sol.u.u2 = std::move(inner.u.u2);
    sol.u.u3 = std::move(outer.u.u3);
    sol.f1star = std::move(outer.f1star);
    sol.f2star = std::move(inner.f2star);
    sol.f3star = std::move(outer.f3star);
    sol.residual_ode = std::max(outer.residual_ode, inner.residual_ode);
    sol.residual_bc = std::max(outer.residual_bc, inner.residual_bc);
    return sol;
}

ProbeResult resolvent_norm_probe(const ProblemDefinition& problem, double lambda_i, double lambda_r,
                                 std::span<const Complex> f3vec) {
    if (!(lambda_i > 0.0) || !std::isfinite(lambda_i)) throw ValidationError("lambda_i: must be positive");
    if (!std::isfinite(lambda_r)) throw ValidationError("lambda_r: must be finite");
    if (f3vec.size() != problem.dim) throw ValidationError("probe vector: wrong length");
    if (norm(f3vec) == 0.0) throw ValidationError("probe vector: must be nonzero");

    const IntervalConfig& base = problem.intervals;
    const double h = base.T / static_cast<double>(simpson_count(base.n_outer) - 1);
    IntervalConfig iv = base;
    iv.T = std::max(base.T, 40.0 / std::min(1.0, lambda_i));
    iv.n_outer = static_cast<std::size_t>(std::llround(iv.T / h)) + 1;

    const Complex lambda{lambda_r, lambda_i};
    const HermitianEig eig3 = herm_eig(problem.A3, problem.tolerances.eig_tol);
    const GridFunction f3 = propagate(eig3, std::conj(lambda), make_grid(IntervalId::outer_right, iv, problem.dim),
                                      base.a3, f3vec);
    const GridFunction f1 = make_grid(IntervalId::outer_left, iv, problem.dim);
    const ResolventSolution sol = resolvent_outer(problem, lambda, f1, f3);

    const double f_norm = l2_norm(f3);
    ProbeResult probe;
    probe.lambda_i = lambda_i;
    probe.lambda_r = lambda_r;
    probe.ratio = l2_norm(*sol.u.u3) / f_norm;
    probe.full_ratio = l2_norm(sol.u) / f_norm;
    probe.bound = 1.0 / (2.0 * lambda_i);
    return probe;
}

}  // namespace multipoint
