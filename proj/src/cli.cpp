#include "multipoint/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "multipoint/boundary_triplet.hpp"
#include "multipoint/errors.hpp"
#include "multipoint/example.hpp"
#include "multipoint/json_format.hpp"
#include "multipoint/model.hpp"
#include "multipoint/oracle.hpp"
#include "multipoint/resolvent.hpp"
#include "multipoint/spectrum.hpp"

namespace multipoint::cli {

namespace {

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ValidationError("cannot open output file: " + path);
    file << text;
    if (!file) throw ValidationError("failed writing output file: " + path);
}

Window to_window(const std::vector<double>& bounds) {
    if (bounds.size() != 2) throw ValidationError("window: expected two values");
    if (!std::isfinite(bounds[0]) || !std::isfinite(bounds[1])) throw ValidationError("window: bounds must be finite");
    return Window{bounds[0], bounds[1]};
}

std::vector<double> parse_probe_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ValidationError("norm-probe: '" + item + "' is not a number");
        }
        if (used != item.size()) throw ValidationError("norm-probe: '" + item + "' is not a number");
        if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("norm-probe: values must be positive");
        values.push_back(v);
    }
    if (values.empty()) throw ValidationError("norm-probe: empty list");
    return values;
}

struct ReportOptions {
    std::vector<double> window{-15.0, 15.0};
    std::string out;
    std::string csv;
    std::string probes;
};

void add_report_options(CLI::App* cmd, ReportOptions& o) {
    cmd->add_option("--window", o.window, "Spectral window lo hi")->expected(2)->allow_extra_args(false);
    cmd->add_option("--out", o.out, "Report JSON path (default: stdout)");
    cmd->add_option("--csv", o.csv, "Eigenvalue table CSV path");
    cmd->add_option("--norm-probe", o.probes, "Comma-separated Im(lambda) values for resolvent-norm probes");
}

void emit_report(const ProblemDefinition& problem, const ReportOptions& o, std::ostream& out) {
    const Window window = to_window(o.window);
    std::vector<ProbeResult> probes;
    if (!o.probes.empty()) {
        CVector v(problem.dim, Complex{});
        v[0] = 1.0;
        for (double li : parse_probe_list(o.probes)) probes.push_back(resolvent_norm_probe(problem, li, 0.0, v));
    }
    const SpectrumReport report = assemble_report(problem, window, probes);
    write_text(o.out, dump_json(report_to_json(report)), out);
    if (!o.csv.empty()) write_text(o.csv, report_to_csv(report), out);
}

Json solution_to_json(const ResolventSolution& sol) {
    Json doc;
    doc["lambda"] = complex_to_json(sol.lambda);
    if (sol.f1star) doc["f1star"] = vector_to_json(*sol.f1star);
    if (sol.f2star) doc["f2star"] = vector_to_json(*sol.f2star);
    if (sol.f3star) doc["f3star"] = vector_to_json(*sol.f3star);
    doc["residual_ode"] = sol.residual_ode;
    doc["residual_bc"] = sol.residual_bc;
    Json parts = Json::array();
    for (IntervalId id : {IntervalId::outer_left, IntervalId::inner, IntervalId::outer_right}) {
        const auto& part = sol.u.part(id);
        if (part) parts.push_back(Json::parse(grid_function_to_json(*part)));
    }
    doc["u"] = parts;
    return doc;
}

CVector random_vector(std::mt19937_64& rng, std::size_t d) {
    std::normal_distribution<double> normal;
    CVector v(d);
    for (auto& c : v) c = Complex{normal(rng), normal(rng)};
    return v;
}

struct VerifySummary {
    double outer_round_trip = 0.0;
    double inner_round_trip = 0.0;
    double green_outer = 0.0;
    double green_inner = 0.0;
    double condition_satisfied = 0.0;
    double condition_violated_min = std::numeric_limits<double>::infinity();
};

double max_diff(const CVector& a, std::span<const Complex> b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

VerifySummary verify_problem(const ProblemDefinition& problem, std::size_t trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t d = problem.dim;
    const Complex i{0.0, 1.0};
    const double sqrt2 = std::sqrt(2.0);
    const ComplexMatrix& w1 = problem.W1.matrix();
    VerifySummary s;
    for (std::size_t t = 0; t < trials; ++t) {
        const CVector f = random_vector(rng, d);
        const CVector g = random_vector(rng, d);
        const TripleFunction u = construct_witness(f, g, problem);
        const BoundaryValues bv = outer_gamma(u);
        s.outer_round_trip = std::max({s.outer_round_trip, max_diff(*bv.gamma1, f), max_diff(*bv.gamma2, g)});
        const TripleFunction ui = construct_inner_witness(f, g, problem);
        const BoundaryValues bi = inner_gamma(ui);
        s.inner_round_trip = std::max({s.inner_round_trip, max_diff(*bi.Gamma1, f), max_diff(*bi.Gamma2, g)});

        // Boundary data x1 = u1(a1), x3 = u3(a3) mapped back to (f, g).
        const CVector x1 = random_vector(rng, d);
        const CVector good = w1 * std::span<const Complex>(x1);
        CVector bad = good;
        bad[0] += 1.0;
        for (const CVector* x3 : std::initializer_list<const CVector*>{&good, &bad}) {
            CVector fb(d);
            CVector gb(d);
            for (std::size_t c = 0; c < d; ++c) {
                fb[c] = (x1[c] + (*x3)[c]) / (i * sqrt2);
                gb[c] = (x1[c] - (*x3)[c]) / sqrt2;
            }
            const double r = outer_condition_residual(outer_gamma(construct_witness(fb, gb, problem)), problem.W1);
            if (x3 == &good) {
                s.condition_satisfied = std::max(s.condition_satisfied, r);
            } else {
                s.condition_violated_min = std::min(s.condition_violated_min, r);
            }
        }
    }
    // Green identities on a few smooth pairs.
    const std::size_t pairs = std::min<std::size_t>(trials, 5);
    for (std::size_t t = 0; t < pairs; ++t) {
        const CVector f1 = random_vector(rng, d);
        const CVector g1 = random_vector(rng, d);
        const CVector f2 = random_vector(rng, d);
        const CVector g2 = random_vector(rng, d);
        s.green_outer = std::max(s.green_outer, green_defect(construct_witness(f1, g1, problem),
                                                             construct_witness(f2, g2, problem), problem,
                                                             TripletKind::outer));
        s.green_inner = std::max(s.green_inner, green_defect(construct_inner_witness(f1, g1, problem),
                                                             construct_inner_witness(f2, g2, problem), problem,
                                                             TripletKind::inner));
    }
    return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra and resolvents of a multipoint first-order operator", "multipoint"};
    app.require_subcommand(1);

    std::string problem_path;

    auto* spectrum = app.add_subcommand("spectrum", "Point spectrum report for a problem file");
    ReportOptions spectrum_opts;
    spectrum->add_option("--problem", problem_path, "Problem JSON")->required();
    add_report_options(spectrum, spectrum_opts);

    auto* resolvent = app.add_subcommand("resolvent", "Apply the resolvent to sampled functions");
    std::vector<double> lambda_parts;
    std::vector<std::string> f_paths;
    std::string resolvent_out;
    resolvent->add_option("--problem", problem_path, "Problem JSON")->required();
    resolvent->add_option("--lambda", lambda_parts, "Re Im")->expected(2)->required()->allow_extra_args(false);
    resolvent->add_option("--f", f_paths, "Function sample file (repeatable)")->allow_extra_args(false);
    resolvent->add_option("--out", resolvent_out, "Output JSON path (default: stdout)");

    auto* verify = app.add_subcommand("verify", "Boundary-triplet checks");
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::string verify_out;
    verify->add_option("--problem", problem_path, "Problem JSON")->required();
    verify->add_option("--trials", trials, "Random (f, g) pairs")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--out", verify_out, "Output JSON path (default: stdout)");

    auto* compare = app.add_subcommand("oracle-compare", "Cross-check the spectrum with a determinant sweep");
    std::vector<double> compare_window{-15.0, 15.0};
    double tol = 1e-6;
    SweepConfig sweep;
    std::string compare_out;
    compare->add_option("--problem", problem_path, "Problem JSON")->required();
    compare->add_option("--window", compare_window, "Spectral window lo hi")->expected(2)->allow_extra_args(false);
    compare->add_option("--tol", tol, "Matching tolerance");
    compare->add_option("--samples", sweep.samples, "Sweep samples");
    compare->add_option("--rk4-steps", sweep.rk4_steps, "RK4 steps");
    compare->add_option("--out", compare_out, "Output JSON path (default: stdout)");

    auto* example = app.add_subcommand("example-pde", "Neumann-mode truncation of the model PDE");
    ExampleSpec spec;
    ReportOptions example_opts;
    example->add_option("--modes", spec.modes, "Number of modes")->required();
    example->add_option("--psi", spec.psi, "Inner coupling angle")->required();
    example->add_option("--phi", spec.phi, "Outer coupling angle");
    add_report_options(example, example_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*spectrum) {
            emit_report(load_problem_file(problem_path), spectrum_opts, out);
        } else if (*resolvent) {
            const ProblemDefinition problem = load_problem_file(problem_path);
            TripleFunction f;
            for (const std::string& path : f_paths) {
                GridFunction g = load_grid_function(read_text_file(path), problem);
                auto& slot = f.part(g.interval());
                if (slot) throw ValidationError("f: interval " + std::string(to_string(g.interval())) + " given twice");
                slot = std::move(g);
            }
            const ResolventSolution sol = apply_resolvent(problem, Complex{lambda_parts[0], lambda_parts[1]}, f);
            write_text(resolvent_out, dump_json(solution_to_json(sol)), out);
        } else if (*verify) {
            const ProblemDefinition problem = load_problem_file(problem_path);
            const VerifySummary s = verify_problem(problem, trials, seed);
            const bool pass = s.outer_round_trip <= 1e-12 && s.inner_round_trip <= 1e-12 && s.green_outer <= 1e-5 &&
                              s.green_inner <= 1e-6 && s.condition_satisfied <= 1e-10 &&
                              s.condition_violated_min > 1e-6;
            Json doc;
            doc["trials"] = trials;
            doc["seed"] = seed;
            doc["outer_round_trip_max_error"] = s.outer_round_trip;
            doc["inner_round_trip_max_error"] = s.inner_round_trip;
            doc["green_defect_outer"] = s.green_outer;
            doc["green_defect_inner"] = s.green_inner;
            doc["outer_condition_residual_satisfied"] = s.condition_satisfied;
            doc["outer_condition_residual_violated_min"] = s.condition_violated_min;
            doc["pass"] = pass;
            write_text(verify_out, dump_json(doc), out);
            if (!pass) {
                err << "verify: boundary-triplet checks exceeded their tolerances\n";
                return 2;
            }
        } else if (*compare) {
            const ProblemDefinition problem = load_problem_file(problem_path);
            if (!(tol > 0.0)) throw ValidationError("tol: must be positive");
            sweep.window = to_window(compare_window);
            const SpectrumReport report = point_spectrum(problem, sweep.window);
            const SweepResult roots = det_sweep_eigenvalues(problem, sweep);
            const MatchReport match = compare_spectra(report, roots.roots, tol);
            Json doc;
            doc["window"] = Json::array({sweep.window.lo, sweep.window.hi});
            doc["tol"] = tol;
            doc["main_count"] = report.entries.size();
            doc["oracle_count"] = roots.roots.size();
            doc["matched"] = match.matched;
            doc["max_distance"] = match.max_distance;
            doc["unmatched_main"] = match.unmatched_main;
            doc["unmatched_oracle"] = match.unmatched_oracle;
            doc["warnings"] = roots.warnings;
            write_text(compare_out, dump_json(doc), out);
            for (const std::string& w : roots.warnings) err << "warning: " << w << '\n';
            if (!match.all_matched()) {
                err << "oracle-compare: " << match.unmatched_main.size() << " unmatched spectrum entries, "
                    << match.unmatched_oracle.size() << " unmatched oracle roots\n";
                return 2;
            }
        } else if (*example) {
            emit_report(build_example_problem(spec), example_opts, out);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace multipoint::cli
