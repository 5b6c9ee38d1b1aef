// Acceptance gate: one [PASS]/[FAIL] line per criterion; exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "multipoint/boundary_triplet.hpp"
#include "multipoint/cli.hpp"
#include "multipoint/example.hpp"
#include "multipoint/json_format.hpp"
#include "multipoint/oracle.hpp"
#include "multipoint/resolvent.hpp"
#include "multipoint/spectrum.hpp"
#include "support.hpp"

namespace mp = multipoint;
namespace ts = testing_support;
using mp::Complex;
using mp::CVector;
using mp::GridFunction;
using mp::IntervalId;
using mp::TripleFunction;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

void report(const char* id, bool pass, const std::string& detail) {
    std::printf("[%s] %s %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::vector<mp::ProblemDefinition> ac1_problems() {
    std::mt19937_64 rng(20240601);
    std::vector<mp::ProblemDefinition> out;
    for (int k = 0; k < 25; ++k) out.push_back(ts::random_problem(rng, 4));
    return out;
}

void ac1(const std::vector<mp::ProblemDefinition>& problems) {
    const auto start = std::chrono::steady_clock::now();
    std::size_t unmatched = 0;
    std::size_t total = 0;
    double worst = 0.0;
    for (const auto& p : problems) {
        mp::SweepConfig cfg;
        cfg.window = {-15.0, 15.0};
        cfg.rk4_steps = 2048;
        const mp::SpectrumReport main = mp::point_spectrum(p, cfg.window);
        const mp::SweepResult oracle = mp::det_sweep_eigenvalues(p, cfg);
        const mp::MatchReport m = mp::compare_spectra(main, oracle.roots, 1e-6);
        unmatched += m.unmatched_main.size() + m.unmatched_oracle.size();
        total += main.entries.size();
        worst = std::max(worst, m.max_distance);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream os;
    os << "25 random problems, " << total << " eigenvalues, unmatched=" << unmatched
       << ", max distance=" << fmt("%.3g", worst) << ", runtime=" << fmt("%.2f", seconds) << " s";
    report("AC1", unmatched == 0 && seconds <= 20.0, os.str());
}

void ac2() {
    const auto one = ts::scalar_matrix(1.0);
    const auto zero = ts::scalar_matrix(0.0);
    const mp::ProblemDefinition p = ts::make_problem(zero, zero, zero, one, one, 0.0, 1.0);
    bool pass = true;
    double worst = 0.0;
    for (const mp::Window w : {mp::Window{-7.0, 7.0}, mp::Window{-20.0, 31.0}}) {
        const mp::SpectrumReport r = mp::point_spectrum(p, w);
        std::vector<double> expected;
        for (int n = -10; n <= 10; ++n)
            if (w.contains(2.0 * kPi * n)) expected.push_back(2.0 * kPi * n);
        if (r.entries.size() != expected.size()) {
            pass = false;
            continue;
        }
        for (std::size_t k = 0; k < expected.size(); ++k) {
            worst = std::max(worst, std::abs(r.entries[k].lambda - expected[k]));
        }
    }
    pass = pass && worst <= 1e-12;
    report("AC2", pass, "d=1, A2=0, W2=1, delta=1: max |lambda - 2 pi n| = " + fmt("%.3g", worst));
}

void ac3(const std::vector<mp::ProblemDefinition>& problems) {
    double ode = 0.0;
    double bc = 0.0;
    std::size_t count = 0;
    const auto absorb = [&](const mp::SpectrumReport& r) {
        for (const auto& e : r.entries) {
            ode = std::max(ode, e.ode_residual);
            bc = std::max(bc, e.bc_residual);
            ++count;
        }
    };
    for (const auto& p : problems) absorb(mp::point_spectrum(p, {-15.0, 15.0}));
    absorb(mp::point_spectrum(mp::build_example_problem({4, 0.4, 1.0}), {0.0, 50.0}));
    std::ostringstream os;
    os << count << " entries, max ode_residual=" << fmt("%.3g", ode) << ", max bc_residual=" << fmt("%.3g", bc);
    report("AC3", ode <= 1e-6 && bc <= 1e-9, os.str());
}

void ac4() {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> lam(-20.0, 20.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        mp::ProblemDefinition p = ts::random_problem(rng, 4);
        const CVector f = ts::random_vector(rng, p.dim);
        worst = std::max(worst, mp::outer_norm_constancy(p, lam(rng), f));
    }
    report("AC4", worst <= 1e-10, "50 draws, max norm deviation=" + fmt("%.3g", worst));
}

GridFunction bump(const mp::ProblemDefinition& p, IntervalId id, double centre, double width,
                  std::span<const Complex> v) {
    GridFunction g = mp::make_grid(id, p);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double x = (g.node(k) - centre) / width;
        const Complex s = std::exp(-x * x) * std::exp(Complex{0.0, 0.7 * x});
        for (std::size_t c = 0; c < p.dim; ++c) g[k][c] = s * v[c];
    }
    return g;
}

TripleFunction smooth_f(const mp::ProblemDefinition& p, std::mt19937_64& rng) {
    const auto& iv = p.intervals;
    TripleFunction f;
    f.u1 = bump(p, IntervalId::outer_left, iv.a1 - 2.0, 1.0, ts::random_vector(rng, p.dim));
    f.u2 = bump(p, IntervalId::inner, 0.5 * (iv.a2 + iv.b2), 0.5 * iv.inner_length(), ts::random_vector(rng, p.dim));
    f.u3 = bump(p, IntervalId::outer_right, iv.a3 + 2.0, 1.0, ts::random_vector(rng, p.dim));
    return f;
}

TripleFunction difference(const TripleFunction& a, const TripleFunction& b) {
    TripleFunction d;
    d.u1 = *a.u1 - *b.u1;
    d.u2 = *a.u2 - *b.u2;
    d.u3 = *a.u3 - *b.u3;
    return d;
}

TripleFunction scaled(TripleFunction a, Complex s) {
    *a.u1 *= s;
    *a.u2 *= s;
    *a.u3 *= s;
    return a;
}

void ac5() {
    std::mt19937_64 rng(5);
    const Complex lambdas[] = {{0.0, 1.0}, {0.0, -1.0}, {1.0, 0.5}, {1.0, -0.5}};
    double ode = 0.0;
    double bc = 0.0;
    double identity = 0.0;
    for (int k = 0; k < 10; ++k) {
        const mp::ProblemDefinition p = ts::random_problem(rng, 4);
        const TripleFunction f = smooth_f(p, rng);
        for (const Complex lambda : lambdas) {
            const auto sol = mp::apply_resolvent(p, lambda, f);
            ode = std::max(ode, sol.residual_ode);
            bc = std::max(bc, sol.residual_bc);
        }
        // R_l f - R_n f - (l - n) R_l R_n f, both half-planes.
        for (const auto& [l, n] : {std::pair{lambdas[0], lambdas[2]}, std::pair{lambdas[1], lambdas[3]}}) {
            const TripleFunction rl = mp::apply_resolvent(p, l, f).u;
            const TripleFunction rn = mp::apply_resolvent(p, n, f).u;
            const TripleFunction rlrn = mp::apply_resolvent(p, l, rn).u;
            const double defect = mp::l2_norm(difference(difference(rl, rn), scaled(rlrn, l - n)));
            identity = std::max(identity, defect / mp::l2_norm(f));
        }
    }
    std::ostringstream os;
    os << "10 problems x 4 lambdas: max FD residual=" << fmt("%.3g", ode) << ", max bc residual=" << fmt("%.3g", bc)
       << ", first resolvent identity defect=" << fmt("%.3g", identity);
    report("AC5", ode <= 1e-4 && bc <= 1e-9 && identity <= 1e-3, os.str());
}

void ac6() {
    std::mt19937_64 rng(6);
    const mp::ProblemDefinition p = ts::random_problem(rng, 3);
    const CVector v = ts::random_vector(rng, p.dim);
    double worst_rel = 0.0;
    double worst_phase = 0.0;
    std::ostringstream os;
    for (const double li : {1.0, 0.5, 0.1}) {
        const double base = mp::resolvent_norm_probe(p, li, 0.0, v).ratio;
        const double bound = 1.0 / (2.0 * li);
        worst_rel = std::max(worst_rel, std::abs(base - bound) / bound);
        for (const double lr : {3.0, -7.0}) {
            worst_phase = std::max(worst_phase, std::abs(mp::resolvent_norm_probe(p, li, lr, v).ratio - base));
        }
        os << "ratio(" << li << ")=" << fmt("%.9f", base) << " ";
    }
    os << "max rel error=" << fmt("%.3g", worst_rel) << ", lambda_r spread=" << fmt("%.3g", worst_phase);
    report("AC6", worst_rel <= 1e-3 && worst_phase <= 1e-6, os.str());
}

TripleFunction smooth_decaying(const mp::ProblemDefinition& p, std::mt19937_64& rng) {
    // Gaussian-modulated boundary profiles with nonzero boundary data.
    const auto& iv = p.intervals;
    TripleFunction u;
    u.u1 = mp::make_grid(IntervalId::outer_left, p);
    u.u2 = mp::make_grid(IntervalId::inner, p);
    u.u3 = mp::make_grid(IntervalId::outer_right, p);
    const CVector v1 = ts::random_vector(rng, p.dim);
    const CVector v2 = ts::random_vector(rng, p.dim);
    const CVector v3 = ts::random_vector(rng, p.dim);
    const CVector w2 = ts::random_vector(rng, p.dim);
    for (std::size_t k = 0; k < u.u1->size(); ++k) {
        const double x = u.u1->node(k) - iv.a1;
        const Complex s = std::exp(-0.25 * x * x) * std::exp(Complex{0.0, 0.5 * x});
        for (std::size_t c = 0; c < p.dim; ++c) (*u.u1)[k][c] = s * v1[c];
    }
    for (std::size_t k = 0; k < u.u3->size(); ++k) {
        const double x = u.u3->node(k) - iv.a3;
        const Complex s = std::exp(-0.25 * x * x) * (1.0 + x) * std::exp(Complex{0.0, -0.3 * x});
        for (std::size_t c = 0; c < p.dim; ++c) (*u.u3)[k][c] = s * v3[c];
    }
    for (std::size_t k = 0; k < u.u2->size(); ++k) {
        const double x = (u.u2->node(k) - iv.a2) / iv.inner_length();
        for (std::size_t c = 0; c < p.dim; ++c) {
            (*u.u2)[k][c] = std::exp(Complex{0.0, 2.0 * x}) * v2[c] + std::cos(3.0 * x) * w2[c];
        }
    }
    return u;
}

void ac7() {
    std::mt19937_64 rng(7);
    const mp::ProblemDefinition p = ts::random_problem(rng, 4);
    double round_trip = 0.0;
    for (int k = 0; k < 100; ++k) {
        const CVector f = ts::random_vector(rng, p.dim);
        const CVector g = ts::random_vector(rng, p.dim);
        const mp::BoundaryValues bv = mp::outer_gamma(mp::construct_witness(f, g, p));
        round_trip = std::max({round_trip, ts::max_abs_diff(*bv.gamma1, f), ts::max_abs_diff(*bv.gamma2, g)});
    }
    double outer = 0.0;
    double inner = 0.0;
    for (int k = 0; k < 5; ++k) {
        const TripleFunction u = smooth_decaying(p, rng);
        const TripleFunction v = smooth_decaying(p, rng);
        outer = std::max(outer, mp::green_defect(u, v, p, mp::TripletKind::outer));
        inner = std::max(inner, mp::green_defect(u, v, p, mp::TripletKind::inner));
        const TripleFunction wu = mp::construct_witness(ts::random_vector(rng, p.dim), ts::random_vector(rng, p.dim), p);
        const TripleFunction wv = mp::construct_witness(ts::random_vector(rng, p.dim), ts::random_vector(rng, p.dim), p);
        outer = std::max(outer, mp::green_defect(wu, wv, p, mp::TripletKind::outer));
    }
    std::ostringstream os;
    os << "round trip max error=" << fmt("%.3g", round_trip) << ", Green defect outer=" << fmt("%.3g", outer)
       << ", inner=" << fmt("%.3g", inner);
    report("AC7", round_trip <= 1e-12 && outer <= 1e-5 && inner <= 1e-6, os.str());
}

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::vector<const char*> argv{"multipoint"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int rc = mp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    return rc;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void ac8(const std::filesystem::path& dir) {
    const auto out = dir / "example.json";
    const int rc = run_cli({"example-pde", "--modes", "4", "--psi", "0.4", "--window", "0", "50", "--out", out.string()});
    std::vector<double> expected;
    for (int n = 0; n < 4; ++n) {
        double theta = std::fmod(n * n * kPi * kPi - 0.4, 2.0 * kPi);
        if (theta < 0.0) theta += 2.0 * kPi;
        for (int k = 0; theta + 2.0 * kPi * k <= 50.0; ++k) expected.push_back(theta + 2.0 * kPi * k);
    }
    std::sort(expected.begin(), expected.end());
    std::vector<double> got;
    if (rc == 0) {
        const auto doc = mp::Json::parse(slurp(out));
        for (const auto& e : doc.at("entries")) got.push_back(e.at("lambda").get<double>());
    }
    double worst = got.size() == expected.size() ? 0.0 : INFINITY;
    for (std::size_t k = 0; k < std::min(got.size(), expected.size()); ++k)
        worst = std::max(worst, std::abs(got[k] - expected[k]));
    std::ostringstream os;
    os << "exit=" << rc << ", " << got.size() << " eigenvalues (expected " << expected.size()
       << "), max deviation=" << fmt("%.3g", worst);
    report("AC8", rc == 0 && worst <= 1e-9, os.str());
}

void ac9(const std::filesystem::path& dir) {
    std::mt19937_64 rng(9);
    const mp::ProblemDefinition p = ts::random_problem(rng, 3);
    const auto problem = dir / "problem.json";
    std::ofstream(problem) << mp::problem_to_json(p);
    const auto f_inner = dir / "f_inner.json";
    {
        GridFunction g = mp::make_grid(IntervalId::inner, p);
        for (std::size_t k = 0; k < g.size(); ++k)
            for (std::size_t c = 0; c < p.dim; ++c) g[k][c] = Complex{std::cos(g.node(k) + c), 0.5};
        std::ofstream(f_inner) << mp::grid_function_to_json(g);
    }
    const std::vector<std::vector<std::string>> commands = {
        {"spectrum", "--problem", problem.string(), "--window", "-10", "10", "--norm-probe", "1,0.5"},
        {"resolvent", "--problem", problem.string(), "--lambda", "0.3", "0.8", "--f", f_inner.string()},
        {"verify", "--problem", problem.string(), "--trials", "20"},
        {"oracle-compare", "--problem", problem.string(), "--window", "-10", "10"},
        {"example-pde", "--modes", "3", "--psi", "0.4", "--phi", "1.0", "--window", "0", "30"},
    };
    std::size_t identical = 0;
    std::string codes;
    for (const auto& cmd : commands) {
        std::string a;
        std::string b;
        const int ra = run_cli(cmd, &a);
        const int rb = run_cli(cmd, &b);
        codes += std::to_string(ra);
        if (ra == rb && !a.empty() && a == b) ++identical;
    }
    report("AC9", identical == commands.size() && codes == "00000",
           std::to_string(identical) + "/" + std::to_string(commands.size()) +
               " subcommands byte-identical across two runs (exit codes " + codes + ")");
}

}  // namespace

int main() {
    const auto dir = std::filesystem::temp_directory_path() / ("multipoint_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto problems = ac1_problems();
    ac1(problems);
    ac2();
    ac3(problems);
    ac4();
    ac5();
    ac6();
    ac7();
    ac8(dir);
    ac9(dir);
    std::filesystem::remove_all(dir);
    std::printf("%d criteria failed\n", failures);
    return failures;
}
