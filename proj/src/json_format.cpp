#include "multipoint/json_format.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "multipoint/errors.hpp"

namespace multipoint {

namespace {

void write_string(std::string& out, const std::string& s) {
    // Reuse nlohmann's escaping for strings.
    out += Json(s).dump();
}

void write(std::string& out, const Json& v, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                write_string(out, it.key());
                out += ": ";
                write(out, it.value(), depth + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line; nested structures are indented.
            bool flat = true;
            for (const auto& e : v) flat = flat && !e.is_structured();
            bool numeric_pairs = true;
            for (const auto& e : v) {
                numeric_pairs = numeric_pairs && e.is_array() && e.size() <= 2;
                if (numeric_pairs)
                    for (const auto& x : e) numeric_pairs = numeric_pairs && x.is_number();
            }
            if (flat || numeric_pairs) {
                out += "[";
                bool first = true;
                for (const auto& e : v) {
                    if (!first) out += ", ";
                    first = false;
                    write(out, e, depth + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& e : v) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                write(out, e, depth + 1);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_double(v.get<double>());
            return;
        case Json::value_t::string:
            write_string(out, v.get<std::string>());
            return;
        default:
            out += v.dump();
            return;
    }
}

}  // namespace

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dump_json(const Json& value) {
    std::string out;
    write(out, value, 0);
    out += "\n";
    return out;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(std::span<const Complex> v) {
    Json out = Json::array();
    for (const Complex& z : v) out.push_back(complex_to_json(z));
    return out;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
    return out;
}

Complex complex_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ValidationError(path + ": expected a complex number [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

CVector vector_from_json(const Json& j, std::size_t dim, const std::string& path) {
    if (!j.is_array() || j.size() != dim) {
        std::ostringstream os;
        os << path << ": expected an array of " << dim << " complex numbers";
        throw ValidationError(os.str());
    }
    CVector out(dim);
    for (std::size_t k = 0; k < dim; ++k) out[k] = complex_from_json(j[k], path + "[" + std::to_string(k) + "]");
    return out;
}

ComplexMatrix matrix_from_json(const Json& j, std::size_t dim, const std::string& path) {
    if (!j.is_array() || j.size() != dim) {
        std::ostringstream os;
        os << path << ": expected " << dim << " rows";
        throw ValidationError(os.str());
    }
    std::vector<Complex> entries;
    entries.reserve(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const CVector row = vector_from_json(j[r], dim, path + "[" + std::to_string(r) + "]");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    try {
        return ComplexMatrix(dim, dim, std::move(entries));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

}  // namespace multipoint
