#include "multipoint/model.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "multipoint/errors.hpp"
#include "multipoint/json_format.hpp"

namespace multipoint {

std::string_view to_string(IntervalId id) {
    switch (id) {
        case IntervalId::outer_left: return "outer_left";
        case IntervalId::inner: return "inner";
        case IntervalId::outer_right: return "outer_right";
    }
    return "inner";
}

IntervalId interval_from_string(std::string_view name) {
    if (name == "outer_left") return IntervalId::outer_left;
    if (name == "inner") return IntervalId::inner;
    if (name == "outer_right") return IntervalId::outer_right;
    throw ValidationError("unknown interval '" + std::string(name) + "'");
}

void IntervalConfig::validate() const {
    for (double x : {a1, a2, b2, a3, T}) {
        if (!std::isfinite(x)) throw ValidationError("a1,a2,b2,a3,T: coordinates must be finite");
    }
    if (!(a1 < a2)) throw ValidationError("a1,a2: ordering violated, a1 < a2 required");
    if (!(a2 < b2)) throw ValidationError("a2,b2: ordering violated, a2 < b2 required");
    if (!(b2 < a3)) throw ValidationError("b2,a3: ordering violated, b2 < a3 required");
    if (!(T > 0.0)) throw ValidationError("T: truncation length must be positive");
    if (n_outer < 2) throw ValidationError("n_outer: at least 2 grid points required");
    if (n_inner < 2) throw ValidationError("n_inner: at least 2 grid points required");
}

void ProblemDefinition::validate() const {
    intervals.validate();
    if (dim == 0) throw ValidationError("dim: must be at least 1");
    const std::pair<const char*, std::size_t> dims[] = {
        {"A1", A1.dim()}, {"A2", A2.dim()}, {"A3", A3.dim()}, {"W1", W1.dim()}, {"W2", W2.dim()}};
    for (const auto& [name, d] : dims) {
        if (d != dim) {
            std::ostringstream os;
            os << name << ": expected " << dim << "x" << dim << ", got dimension " << d;
            throw ValidationError(os.str());
        }
    }
}

const HermitianMatrix& ProblemDefinition::coefficient(IntervalId id) const {
    switch (id) {
        case IntervalId::outer_left: return A1;
        case IntervalId::inner: return A2;
        case IntervalId::outer_right: return A3;
    }
    return A2;
}

// ---------------------------------------------------------------------------
// GridFunction

GridFunction::GridFunction(IntervalId id, double t0, double t_end, std::size_t count, std::size_t dim)
    : id_(id), t0_(t0), t_end_(t_end), count_(count), dim_(dim), data_(count * dim) {
    if (count < 2) throw ValidationError("grid function needs at least 2 samples");
    if (!(t_end > t0)) throw ValidationError("grid function needs t_end > t0");
    if (dim == 0) throw ValidationError("grid function needs dimension >= 1");
}

double GridFunction::node(std::size_t k) const noexcept {
    if (k + 1 == count_) return t_end_;
    return t0_ + static_cast<double>(k) * h();
}

bool GridFunction::same_grid(const GridFunction& other) const noexcept {
    return id_ == other.id_ && t0_ == other.t0_ && t_end_ == other.t_end_ && count_ == other.count_ &&
           dim_ == other.dim_;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    if (!same_grid(other)) throw ValidationError("grid mismatch in sum");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    if (!same_grid(other)) throw ValidationError("grid mismatch in difference");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

GridFunction& GridFunction::operator*=(Complex s) {
    for (Complex& z : data_) z *= s;
    return *this;
}

GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }

std::size_t TripleFunction::dim() const {
    std::size_t d = 0;
    for (const auto* p : {&u1, &u2, &u3}) {
        if (!p->has_value()) continue;
        if (d != 0 && (*p)->dim() != d) throw ValidationError("triple function parts disagree on dimension");
        d = (*p)->dim();
    }
    return d;
}

std::optional<GridFunction>& TripleFunction::part(IntervalId id) {
    switch (id) {
        case IntervalId::outer_left: return u1;
        case IntervalId::inner: return u2;
        case IntervalId::outer_right: return u3;
    }
    return u2;
}

const std::optional<GridFunction>& TripleFunction::part(IntervalId id) const {
    return const_cast<TripleFunction*>(this)->part(id);
}

// ---------------------------------------------------------------------------
// Grids and quadrature

std::size_t simpson_count(std::size_t n) noexcept { return n % 2 == 1 ? n : n + 1; }

GridFunction make_grid(IntervalId id, const IntervalConfig& iv, std::size_t dim) {
    iv.validate();
    switch (id) {
        case IntervalId::outer_left:
            return GridFunction(id, iv.a1 - iv.T, iv.a1, simpson_count(iv.n_outer), dim);
        case IntervalId::inner:
            return GridFunction(id, iv.a2, iv.b2, simpson_count(iv.n_inner), dim);
        case IntervalId::outer_right:
            return GridFunction(id, iv.a3, iv.a3 + iv.T, simpson_count(iv.n_outer), dim);
    }
    throw ValidationError("unknown interval");
}

GridFunction make_grid(IntervalId id, const ProblemDefinition& problem) {
    return make_grid(id, problem.intervals, problem.dim);
}

std::vector<double> quadrature_weights(std::size_t n, double h) {
    std::vector<double> w(n, 0.0);
    if (n < 2) return w;
    if (n == 2) {
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    // Simpson over the first m nodes (m odd); a trailing 3/8 panel when n is even.
    const std::size_t m = n % 2 == 1 ? n : n - 3;
    for (std::size_t k = 0; k + 2 < m; k += 2) {
        w[k] += h / 3.0;
        w[k + 1] += 4.0 * h / 3.0;
        w[k + 2] += h / 3.0;
    }
    if (m != n) {
        const std::size_t k = n - 4;
        w[k] += 3.0 * h / 8.0;
        w[k + 1] += 9.0 * h / 8.0;
        w[k + 2] += 9.0 * h / 8.0;
        w[k + 3] += 3.0 * h / 8.0;
    }
    return w;
}

Complex l2_inner_product(const GridFunction& u, const GridFunction& v) {
    if (!u.same_grid(v)) throw ValidationError("grid mismatch in inner product");
    const std::vector<double> w = quadrature_weights(u.size(), u.h());
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const Complex p = dot(u[k], v[k]);
        re += w[k] * p.real();
        im += w[k] * p.imag();
    }
    return {re, im};
}

Complex l2_inner_product(const TripleFunction& u, const TripleFunction& v) {
    Complex total{};
    for (IntervalId id : {IntervalId::outer_left, IntervalId::inner, IntervalId::outer_right}) {
        const auto& pu = u.part(id);
        const auto& pv = v.part(id);
        if (pu.has_value() != pv.has_value()) {
            throw ValidationError("grid mismatch: part " + std::string(to_string(id)) + " present in only one function");
        }
        if (pu) total += l2_inner_product(*pu, *pv);
    }
    return total;
}

double l2_norm(const GridFunction& u) { return std::sqrt(std::max(0.0, l2_inner_product(u, u).real())); }

double l2_norm(const TripleFunction& u) { return std::sqrt(std::max(0.0, l2_inner_product(u, u).real())); }

double sup_norm(const GridFunction& u) {
    double m = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) m = std::max(m, norm(u[k]));
    return m;
}

// ---------------------------------------------------------------------------
// Problem files

namespace {

const std::set<std::string> kProblemFields = {"dim", "a1", "a2", "b2", "a3", "T", "n_outer", "n_inner",
                                              "A1",  "A2", "A3", "W1", "W2", "tolerances"};
const std::set<std::string> kToleranceFields = {"eig_tol", "hermitian_tol", "unitary_tol", "residual_tol",
                                                "quadrature_rtol"};

double number_field(const Json& doc, const char* key, double fallback, bool required) {
    if (!doc.contains(key)) {
        if (required) throw ValidationError(std::string(key) + ": missing required field");
        return fallback;
    }
    const Json& v = doc.at(key);
    if (!v.is_number()) throw ValidationError(std::string(key) + ": expected a number");
    return v.get<double>();
}

std::size_t count_field(const Json& doc, const char* key, std::size_t fallback) {
    if (!doc.contains(key)) return fallback;
    const Json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ValidationError(std::string(key) + ": expected a non-negative integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

Json parse(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("parse error: ") + e.what());
    }
}

HermitianMatrix hermitian_field(const Json& doc, const char* key, std::size_t dim, const ToleranceConfig& tol) {
    if (!doc.contains(key)) throw ValidationError(std::string(key) + ": missing required field");
    const ComplexMatrix m = matrix_from_json(doc.at(key), dim, key);
    const double defect = hermitian_defect(m);
    if (!(defect <= tol.hermitian_tol * (1.0 + m.max_abs()))) {
        std::ostringstream os;
        os << key << ": matrix is not Hermitian, residual max|M - M^*| = " << defect;
        throw ValidationError(os.str());
    }
    return HermitianMatrix(m, tol.hermitian_tol);
}

UnitaryMatrix unitary_field(const Json& doc, const char* key, std::size_t dim, const ToleranceConfig& tol) {
    if (!doc.contains(key)) throw ValidationError(std::string(key) + ": missing required field");
    ComplexMatrix m = matrix_from_json(doc.at(key), dim, key);
    const double defect = unitary_defect(m);
    if (!(defect <= tol.unitary_tol)) {
        std::ostringstream os;
        os << key << ": matrix is not unitary, residual ||U^*U - I||_max = " << defect;
        throw ValidationError(os.str());
    }
    return UnitaryMatrix(std::move(m), tol.unitary_tol);
}

}  // namespace

ProblemDefinition load_problem(std::string_view text) {
    const Json doc = parse(text);
    if (!doc.is_object()) throw ValidationError("problem document must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (!kProblemFields.contains(key)) throw ValidationError(key + ": unknown field");
    }

    ProblemDefinition p;
    if (doc.contains("tolerances")) {
        const Json& t = doc.at("tolerances");
        if (!t.is_object()) throw ValidationError("tolerances: expected an object");
        for (const auto& [key, value] : t.items()) {
            if (!kToleranceFields.contains(key)) throw ValidationError("tolerances." + key + ": unknown field");
            if (!value.is_number() || !(value.get<double>() > 0.0)) {
                throw ValidationError("tolerances." + key + ": expected a positive number");
            }
        }
        p.tolerances.eig_tol = t.value("eig_tol", p.tolerances.eig_tol);
        p.tolerances.hermitian_tol = t.value("hermitian_tol", p.tolerances.hermitian_tol);
        p.tolerances.unitary_tol = t.value("unitary_tol", p.tolerances.unitary_tol);
        p.tolerances.residual_tol = t.value("residual_tol", p.tolerances.residual_tol);
        p.tolerances.quadrature_rtol = t.value("quadrature_rtol", p.tolerances.quadrature_rtol);
    }

    if (!doc.contains("dim")) throw ValidationError("dim: missing required field");
    if (!doc.at("dim").is_number_integer() || doc.at("dim").get<long long>() < 1) {
        throw ValidationError("dim: expected a positive integer");
    }
    p.dim = static_cast<std::size_t>(doc.at("dim").get<long long>());

    IntervalConfig& iv = p.intervals;
    iv.a1 = number_field(doc, "a1", iv.a1, true);
    iv.a2 = number_field(doc, "a2", iv.a2, true);
    iv.b2 = number_field(doc, "b2", iv.b2, true);
    iv.a3 = number_field(doc, "a3", iv.a3, true);
    iv.T = number_field(doc, "T", iv.T, false);
    iv.n_outer = count_field(doc, "n_outer", iv.n_outer);
    iv.n_inner = count_field(doc, "n_inner", iv.n_inner);
    iv.validate();

    p.A1 = hermitian_field(doc, "A1", p.dim, p.tolerances);
    p.A2 = hermitian_field(doc, "A2", p.dim, p.tolerances);
    p.A3 = hermitian_field(doc, "A3", p.dim, p.tolerances);
    p.W1 = unitary_field(doc, "W1", p.dim, p.tolerances);
    p.W2 = unitary_field(doc, "W2", p.dim, p.tolerances);
    p.validate();
    return p;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path + ": cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ProblemDefinition load_problem_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return load_problem(text);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

std::string problem_to_json(const ProblemDefinition& p) {
    Json doc;
    doc["dim"] = p.dim;
    doc["a1"] = p.intervals.a1;
    doc["a2"] = p.intervals.a2;
    doc["b2"] = p.intervals.b2;
    doc["a3"] = p.intervals.a3;
    doc["T"] = p.intervals.T;
    doc["n_outer"] = p.intervals.n_outer;
    doc["n_inner"] = p.intervals.n_inner;
    doc["A1"] = matrix_to_json(p.A1.matrix());
    doc["A2"] = matrix_to_json(p.A2.matrix());
    doc["A3"] = matrix_to_json(p.A3.matrix());
    doc["W1"] = matrix_to_json(p.W1.matrix());
    doc["W2"] = matrix_to_json(p.W2.matrix());
    Json tol;
    tol["eig_tol"] = p.tolerances.eig_tol;
    tol["hermitian_tol"] = p.tolerances.hermitian_tol;
    tol["unitary_tol"] = p.tolerances.unitary_tol;
    tol["residual_tol"] = p.tolerances.residual_tol;
    tol["quadrature_rtol"] = p.tolerances.quadrature_rtol;
    doc["tolerances"] = tol;
    return dump_json(doc);
}

GridFunction load_grid_function(std::string_view text, const ProblemDefinition& problem) {
    const Json doc = parse(text);
    if (!doc.is_object()) throw ValidationError("sample file must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "interval" && key != "samples") throw ValidationError(key + ": unknown field");
    }
    if (!doc.contains("interval") || !doc.at("interval").is_string()) {
        throw ValidationError("interval: expected one of outer_left, inner, outer_right");
    }
    const IntervalId id = interval_from_string(doc.at("interval").get<std::string>());
    GridFunction f = make_grid(id, problem);
    if (!doc.contains("samples") || !doc.at("samples").is_array()) throw ValidationError("samples: expected an array");
    const Json& samples = doc.at("samples");
    if (samples.size() != f.size()) {
        std::ostringstream os;
        os << "samples: expected " << f.size() << " nodes for interval " << to_string(id) << ", got "
           << samples.size();
        throw ValidationError(os.str());
    }
    for (std::size_t k = 0; k < f.size(); ++k) {
        const CVector v = vector_from_json(samples[k], problem.dim, "samples[" + std::to_string(k) + "]");
        std::copy(v.begin(), v.end(), f[k].begin());
    }
    return f;
}

std::string grid_function_to_json(const GridFunction& f) {
    Json doc;
    doc["interval"] = std::string(to_string(f.interval()));
    Json samples = Json::array();
    for (std::size_t k = 0; k < f.size(); ++k) samples.push_back(vector_to_json(f[k]));
    doc["samples"] = samples;
    return dump_json(doc);
}

}  // namespace multipoint
