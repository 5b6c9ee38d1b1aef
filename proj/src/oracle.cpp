#include "multipoint/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <tuple>

#include "multipoint/errors.hpp"

namespace multipoint {

void SweepConfig::validate() const {
    if (!std::isfinite(window.lo) || !std::isfinite(window.hi)) throw ValidationError("sweep window must be finite");
    if (samples < 16) throw ValidationError("sweep samples must be >= 16");
    if (rk4_steps < 64) throw ValidationError("rk4_steps must be >= 64");
    if (!(refine_tol > 0.0)) throw ValidationError("refine_tol must be positive");
}

ComplexMatrix rk4_fundamental(const HermitianMatrix& a2, Complex lambda, double delta, std::size_t steps) {
    if (steps < 1) throw ValidationError("rk4_fundamental: steps must be >= 1");
    if (!(delta > 0.0)) throw ValidationError("rk4_fundamental: delta must be positive");
    const std::size_t n = a2.dim();
    const ComplexMatrix id = ComplexMatrix::identity(n);
    const double h = delta / static_cast<double>(steps);
    // For a constant generator K the four RK4 stages collapse to the step
    // matrix I + hK + (hK)^2/2 + (hK)^3/6 + (hK)^4/24.
    ComplexMatrix hk = Complex{0.0, h} * (a2.matrix() - lambda * id);
    ComplexMatrix step = id;
    ComplexMatrix term = id;
    for (int k = 1; k <= 4; ++k) {
        term = (1.0 / k) * (hk * term);
        step += term;
    }
    ComplexMatrix phi = id;
    for (std::size_t s = 0; s < steps; ++s) phi = step * phi;
    return phi;
}

namespace {

class DetFunction {
public:
    DetFunction(const ProblemDefinition& problem, std::size_t rk4_steps)
        : w2_(problem.W2.matrix()),
          phi0_(rk4_fundamental(problem.A2, 0.0, problem.intervals.inner_length(), rk4_steps)),
          delta_(problem.intervals.inner_length()),
          dim_(static_cast<double>(problem.dim)) {}

    // W2 - Phi_lambda with Phi_lambda = e^{-i lambda delta} Phi_0 (the shift commutes with A2).
    ComplexMatrix matrix(double lambda) const {
        return w2_ - std::exp(Complex{0.0, -lambda * delta_}) * phi0_;
    }

    // det(W2 - Phi_lambda) e^{i d lambda delta / 2}: constant phase times a real function.
    Complex rotated(double lambda) const {
        return det(matrix(lambda)) * std::exp(Complex{0.0, 0.5 * dim_ * lambda * delta_});
    }

    std::size_t small_pivots(double lambda, double floor) const {
        // Counts near-zero pivots of a partially pivoted elimination.
        ComplexMatrix u = matrix(lambda);
        std::size_t count = 0;
        const std::size_t n = u.rows();
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            for (std::size_t r = k + 1; r < n; ++r)
                if (std::abs(u(r, k)) > std::abs(u(p, k))) p = r;
            for (std::size_t c = 0; c < n; ++c) std::swap(u(k, c), u(p, c));
            if (std::abs(u(k, k)) <= floor) {
                ++count;
                continue;
            }
            for (std::size_t r = k + 1; r < n; ++r) {
                const Complex f = u(r, k) / u(k, k);
                for (std::size_t c = k; c < n; ++c) u(r, c) -= f * u(k, c);
            }
        }
        return count;
    }

private:
    ComplexMatrix w2_;
    ComplexMatrix phi0_;
    double delta_;
    double dim_;
};

struct RawRoot {
    double lambda;
    bool even;  // found without a sign change
};

}  // namespace

SweepResult det_sweep_eigenvalues(const ProblemDefinition& problem, const SweepConfig& cfg) {
    cfg.validate();
    SweepResult result;
    if (cfg.window.empty()) return result;

    const DetFunction g(problem, cfg.rk4_steps);
    const std::size_t n = cfg.samples;
    const double lo = cfg.window.lo;
    const double hi = cfg.window.hi;

    std::vector<double> xs(n);
    std::vector<Complex> ps(n);
    for (std::size_t k = 0; k < n; ++k) {
        xs[k] = k + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
        ps[k] = g.rotated(xs[k]);
    }
    std::size_t kmax = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(ps[k]) > std::abs(ps[kmax])) kmax = k;
    const double scale = std::abs(ps[kmax]);
    if (scale == 0.0) throw NumericalError("det sweep: determinant vanishes on every sample");
    const Complex kappa = std::conj(ps[kmax]) / scale;
    const auto real_f = [&](double x) { return (g.rotated(x) * kappa).real(); };

    std::vector<double> fs(n);
    std::vector<double> mags(n);
    for (std::size_t k = 0; k < n; ++k) {
        fs[k] = (ps[k] * kappa).real();
        mags[k] = std::abs(ps[k]);
    }
    std::vector<double> sorted = mags;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n / 2), sorted.end());
    const double threshold = 0.1 * sorted[n / 2];
    const double zero_level = 1e-10 * scale;

    std::vector<RawRoot> raw;
    const auto bisect = [&](double a, double b, double fa) {
        while (b - a > cfg.refine_tol) {
            const double m = 0.5 * (a + b);
            const double fm = real_f(m);
            if (fm == 0.0) return m;
            if ((fm > 0.0) == (fa > 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };
    const auto golden_min = [&](double a, double b) {
        const double r = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = b - r * (b - a);
        double d = a + r * (b - a);
        double fc = std::abs(real_f(c));
        double fd = std::abs(real_f(d));
        while (b - a > cfg.refine_tol) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - r * (b - a);
                fc = std::abs(real_f(c));
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + r * (b - a);
                fd = std::abs(real_f(d));
            }
        }
        const double x = 0.5 * (a + b);
        return std::pair{x, std::abs(real_f(x))};
    };

    constexpr int kMaxDepth = 8;
    constexpr std::size_t kSubSamples = 33;
    std::function<void(const std::vector<double>&, const std::vector<double>&, int)> scan =
        [&](const std::vector<double>& x, const std::vector<double>& f, int depth) {
            const std::size_t m = x.size();
            const auto changes = [&](std::size_t i) {
                return (f[i] > 0.0 && f[i + 1] < 0.0) || (f[i] < 0.0 && f[i + 1] > 0.0);
            };
            for (std::size_t i = 0; i + 1 < m; ++i) {
                if (f[i] == 0.0 && (depth == 0 || i > 0)) raw.push_back({x[i], false});
                if (changes(i)) raw.push_back({bisect(x[i], x[i + 1], f[i]), false});
            }
            if (depth == 0 && f[m - 1] == 0.0) raw.push_back({x[m - 1], false});
            // Between roots log|F| is concave, so a sampled local minimum of |F|
            // without an adjacent sign change hides an even number of roots.
            for (std::size_t i = 1; i + 1 < m; ++i) {
                const double ai = std::abs(f[i]);
                if (!(ai <= std::abs(f[i - 1]) && ai <= std::abs(f[i + 1]))) continue;
                if (ai >= threshold || changes(i - 1) || changes(i) || f[i] == 0.0) continue;
                const double a = x[i - 1];
                const double b = x[i + 1];
                if (depth < kMaxDepth && b - a > cfg.refine_tol) {
                    std::vector<double> sx(kSubSamples);
                    std::vector<double> sf(kSubSamples);
                    for (std::size_t k = 0; k < kSubSamples; ++k) {
                        sx[k] = k + 1 == kSubSamples
                                    ? b
                                    : a + (b - a) * static_cast<double>(k) / static_cast<double>(kSubSamples - 1);
                        sf[k] = real_f(sx[k]);
                    }
                    scan(sx, sf, depth + 1);
                } else {
                    const auto [xm, fm] = golden_min(a, b);
                    if (fm <= zero_level) raw.push_back({xm, true});
                }
            }
        };
    scan(xs, fs, 0);

    std::sort(raw.begin(), raw.end(), [](const RawRoot& a, const RawRoot& b) { return a.lambda < b.lambda; });
    const double pivot_floor = 1e-6;
    // Pivots of W2 - Phi_lambda grow like delta |lambda - lambda0|, so the
    // nullity at a root already counts every root within this radius.
    const double cluster_radius = pivot_floor / problem.intervals.inner_length();
    double last_accepted = -std::numeric_limits<double>::infinity();
    double absorb_until = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double x = raw[i].lambda;
        if (x - last_accepted <= 10.0 * cfg.refine_tol || x <= absorb_until) continue;
        if (!cfg.window.contains(x)) continue;
        const std::size_t nullity = g.small_pivots(x, pivot_floor);
        std::size_t multiplicity = std::max<std::size_t>(1, nullity);
        if (raw[i].even) multiplicity = std::max<std::size_t>(2, multiplicity);
        if (multiplicity >= 2) {
            std::ostringstream os;
            os << "unresolved cluster near " << format_double(x) << " reported with multiplicity " << multiplicity;
            result.warnings.push_back(os.str());
        }
        last_accepted = x;
        if (multiplicity >= 2) absorb_until = x + cluster_radius;
        for (std::size_t k = 0; k < multiplicity; ++k) result.roots.push_back(x);
    }
    return result;
}

GridFunction apply_expression(const ProblemDefinition& problem, IntervalId id, const GridFunction& u, Complex lambda,
                              int order) {
    if (u.interval() != id) throw ValidationError("apply_expression: grid belongs to a different interval");
    if (u.dim() != problem.dim) throw ValidationError("apply_expression: dimension mismatch");
    if (u.size() < 3) throw ValidationError("apply_expression: grid too short (< 3 points)");
    GridFunction out = differentiate(u, order);
    out *= Complex{0.0, 1.0};
    const ComplexMatrix& a = problem.coefficient(id).matrix();
    for (std::size_t k = 0; k < u.size(); ++k) {
        const CVector au = a * u[k];
        std::span<Complex> dst = out[k];
        for (std::size_t c = 0; c < problem.dim; ++c) dst[c] += au[c] - lambda * u[k][c];
    }
    return out;
}

MatchReport compare_spectra(const SpectrumReport& main, const std::vector<double>& oracle_roots, double tol) {
    MatchReport report;
    const std::size_t nm = main.entries.size();
    const std::size_t no = oracle_roots.size();
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < nm; ++i) {
        for (std::size_t j = 0; j < no; ++j) {
            const double d = std::abs(main.entries[i].lambda - oracle_roots[j]);
            if (d <= tol) pairs.emplace_back(d, i, j);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<bool> used_main(nm, false);
    std::vector<bool> used_oracle(no, false);
    for (const auto& [d, i, j] : pairs) {
        if (used_main[i] || used_oracle[j]) continue;
        used_main[i] = used_oracle[j] = true;
        ++report.matched;
        report.max_distance = std::max(report.max_distance, d);
    }
    for (std::size_t i = 0; i < nm; ++i)
        if (!used_main[i]) report.unmatched_main.push_back(main.entries[i].lambda);
    for (std::size_t j = 0; j < no; ++j)
        if (!used_oracle[j]) report.unmatched_oracle.push_back(oracle_roots[j]);
    return report;
}

}  // namespace multipoint
