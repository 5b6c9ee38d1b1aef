#pragma once

#include <complex>
#include <span>
#include <string>

#include <json.hpp>

#include "multipoint/linalg.hpp"

namespace multipoint {

using Json = nlohmann::ordered_json;

/// Renders JSON with insertion-ordered keys and every floating-point number
/// printed with 17 significant digits, so equal values give equal bytes.
std::string dump_json(const Json& value);

Json complex_to_json(Complex z);
Json vector_to_json(std::span<const Complex> v);
Json matrix_to_json(const ComplexMatrix& m);

/// Throws ValidationError with `path` in the message on malformed input.
Complex complex_from_json(const Json& j, const std::string& path);
CVector vector_from_json(const Json& j, std::size_t dim, const std::string& path);
ComplexMatrix matrix_from_json(const Json& j, std::size_t dim, const std::string& path);

/// "%.17g", with non-finite values rendered as null.
std::string format_double(double x);

}  // namespace multipoint
