#include "multipoint/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "multipoint/errors.hpp"
#include "multipoint/oracle.hpp"

namespace multipoint {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

GridFunction propagate_on_grid(GridFunction grid, const HermitianEig& eig, Complex shift, double t_ref,
                               std::span<const Complex> start) {
    const std::size_t d = eig.eigenvalues.size();
    const ComplexMatrix& v = eig.vectors;
    const CVector coeff = v.adjoint() * start;
    CVector scaled(d);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double tau = grid.node(k) - t_ref;
        for (std::size_t j = 0; j < d; ++j) {
            scaled[j] = coeff[j] * std::exp(Complex{0.0, 1.0} * (eig.eigenvalues[j] - shift) * tau);
        }
        const CVector u = v * std::span<const Complex>(scaled);
        std::copy(u.begin(), u.end(), grid[k].begin());
    }
    return grid;
}

GridFunction eigenfunction_with(const ProblemDefinition& problem, const HermitianEig& eig, double lambda,
                                std::span<const Complex> f2star) {
    if (f2star.size() != problem.dim) throw ValidationError("eigenfunction_inner: vector has wrong length");
    if (norm(f2star) == 0.0) throw ValidationError("eigenfunction_inner: f2* must be nonzero");
    return propagate_on_grid(make_grid(IntervalId::inner, problem), eig, lambda, problem.intervals.a2, f2star);
}

void attach_residuals(const ProblemDefinition& problem, const HermitianEig& eig, SpectrumEntry& entry) {
    const GridFunction u = eigenfunction_with(problem, eig, entry.lambda, entry.eigvec);
    const CVector w2_ua = problem.W2.matrix() * u.front();
    CVector diff(problem.dim);
    for (std::size_t c = 0; c < problem.dim; ++c) diff[c] = u.back()[c] - w2_ua[c];
    entry.bc_residual = norm(diff);
    entry.ode_residual = sup_norm(apply_expression(problem, IntervalId::inner, u, entry.lambda));
}

}  // namespace

double principal_argument(Complex z) {
    double theta = std::arg(z);
    if (theta < 0.0) theta += kTwoPi;
    if (theta >= kTwoPi - 1e-14) theta = 0.0;
    return theta;
}

UnitaryMatrix monodromy(const ProblemDefinition& problem) {
    const UnitaryMatrix prop = expm_i_hermitian(problem.A2, problem.intervals.inner_length());
    return UnitaryMatrix(problem.W2.matrix().adjoint() * prop.matrix(), problem.tolerances.unitary_tol);
}

GridFunction eigenfunction_inner(const ProblemDefinition& problem, double lambda, std::span<const Complex> f2star) {
    return eigenfunction_with(problem, herm_eig(problem.A2, problem.tolerances.eig_tol), lambda, f2star);
}

SpectrumReport point_spectrum(const ProblemDefinition& problem, Window window) {
    if (!std::isfinite(window.lo) || !std::isfinite(window.hi)) {
        throw ValidationError("window: bounds must be finite");
    }
    SpectrumReport report;
    report.window = window;
    report.inner_length = problem.intervals.inner_length();
    if (window.empty()) return report;

    const double delta = report.inner_length;
    const UnitaryEig ueig = unitary_eig(monodromy(problem), problem.tolerances.eig_tol);
    const HermitianEig a2eig = herm_eig(problem.A2, problem.tolerances.eig_tol);

    for (std::size_t j = 0; j < ueig.eigenvalues.size(); ++j) {
        const Complex mu = ueig.eigenvalues[j];
        const double theta = principal_argument(mu);
        const auto n_lo = static_cast<long long>(std::ceil((window.lo * delta - theta) / kTwoPi));
        const auto n_hi = static_cast<long long>(std::floor((window.hi * delta - theta) / kTwoPi));
        for (long long n = n_lo - 1; n <= n_hi + 1; ++n) {
            const double lambda = (theta + kTwoPi * static_cast<double>(n)) / delta;
            if (!window.contains(lambda)) continue;
            SpectrumEntry e;
            e.lambda = lambda;
            e.mu = mu;
            e.theta = theta;
            e.branch_n = n;
            e.mode = j;
            e.eigvec = ueig.vectors.column(j);
            attach_residuals(problem, a2eig, e);
            report.entries.push_back(std::move(e));
        }
    }
    std::stable_sort(report.entries.begin(), report.entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        return a.mode < b.mode;
    });
    return report;
}

double outer_norm_constancy(const ProblemDefinition& problem, Complex lambda, std::span<const Complex> f1star) {
    if (lambda.imag() != 0.0 || !std::isfinite(lambda.real())) {
        throw ValidationError("outer_norm_constancy: lambda must be real");
    }
    if (f1star.size() != problem.dim) throw ValidationError("outer_norm_constancy: vector has wrong length");
    const HermitianEig eig = herm_eig(problem.A1, problem.tolerances.eig_tol);
    const GridFunction u = propagate_on_grid(make_grid(IntervalId::outer_left, problem), eig, lambda.real(),
                                             problem.intervals.a1, f1star);
    const double reference = norm(f1star);
    double worst = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) worst = std::max(worst, std::abs(norm(u[k]) - reference));
    return worst;
}

SpectrumReport assemble_report(const ProblemDefinition& problem, Window window, std::span<const ProbeResult> probes) {
    SpectrumReport report = point_spectrum(problem, window);
    report.probes.assign(probes.begin(), probes.end());
    return report;
}

Json classification_json() {
    Json c;
    c["spectrum"] = "R";
    c["point_spectrum"] = "entries";
    c["point_spectrum_outer"] = "empty";
    c["continuous_spectrum_outer"] = "R";
    c["residual_spectrum"] = "empty";
    c["evidence"] = "outer norm constancy; resolvent-norm probes";
    return c;
}

Json report_to_json(const SpectrumReport& report) {
    Json doc;
    doc["window"] = Json::array({report.window.lo, report.window.hi});
    doc["inner_length"] = report.inner_length;
    Json entries = Json::array();
    for (const SpectrumEntry& e : report.entries) {
        Json j;
        j["lambda"] = e.lambda;
        j["mu"] = complex_to_json(e.mu);
        j["theta"] = e.theta;
        j["branch_n"] = e.branch_n;
        j["mode_j"] = e.mode;
        j["eigvec"] = vector_to_json(e.eigvec);
        j["ode_residual"] = e.ode_residual;
        j["bc_residual"] = e.bc_residual;
        entries.push_back(j);
    }
    doc["entries"] = entries;
    doc["classification"] = classification_json();
    Json probes = Json::array();
    for (const ProbeResult& p : report.probes) {
        Json j;
        j["lambda_i"] = p.lambda_i;
        j["lambda_r"] = p.lambda_r;
        j["ratio"] = p.ratio;
        j["full_ratio"] = p.full_ratio;
        j["bound"] = p.bound;
        probes.push_back(j);
    }
    doc["probes"] = probes;
    return doc;
}

std::string report_to_csv(const SpectrumReport& report) {
    std::ostringstream os;
    os << "lambda,theta,branch_n,mode_j,ode_residual,bc_residual\n";
    for (const SpectrumEntry& e : report.entries) {
        os << format_double(e.lambda) << ',' << format_double(e.theta) << ',' << e.branch_n << ',' << e.mode << ','
           << format_double(e.ode_residual) << ',' << format_double(e.bc_residual) << '\n';
    }
    return os.str();
}

}  // namespace multipoint
