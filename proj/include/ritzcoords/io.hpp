#pragma once

// JSON documents exchanged by the command-line tool.
//
//   MatrixFile: {"n": N, "entries": [[e11, e12, ...], ...]}
//   CoordsFile: {"n": N, "ritz": [[z], [z, z], ...], "b": [[z], [z, z], ...]}
//
// A value is a real number or a two-element array [re, im].

#include <string>
#include <string_view>

#include <json.hpp>

#include "ritzcoords/coords.hpp"
#include "ritzcoords/fiber.hpp"
#include "ritzcoords/numcore.hpp"

namespace ritzcoords::io {

using Json = nlohmann::json;

/// Thrown for schema violations; maps to the argument/parse exit status.
class ParseError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

Complex complex_from_json(const Json& j);
Json complex_to_json(Complex z);

ComplexList complex_list_from_json(const Json& j);
Json complex_list_to_json(const ComplexList& values);
Json complex_vector_to_json(const ComplexVector& values);

ComplexMatrix matrix_from_json(const Json& doc);
Json matrix_to_json(const ComplexMatrix& x);

RitzData ritz_from_json(const Json& levels);
Json ritz_to_json(const RitzData& r);

FiberCoords coords_from_json(const Json& doc);
Json coords_to_json(const FiberCoords& fc);

/// Indented JSON text; floating-point numbers carry 17 significant digits.
/// Arrays that nest at most one level deep are kept on one line.
std::string format_document(const Json& doc);

/// "1.5", "-2", "3i", "1-2.5i", "-i". Throws ParseError.
Complex parse_complex_literal(std::string_view text);
/// Comma-separated complex literals.
ComplexList parse_complex_list(std::string_view text);

}  // namespace ritzcoords::io
