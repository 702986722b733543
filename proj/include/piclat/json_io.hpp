#pragma once

#include "piclat/matrix.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace piclat {

/// Reads and parses a JSON document; wraps failures in ParseError with the
/// file path in the message.
nlohmann::json load_json_file(const std::filesystem::path& file);

/// Rational from a JSON string (or integer) field; `where` names the field
/// in error messages.
Rational json_rational(const nlohmann::json& j, const std::string& where);

std::vector<Rational> json_rational_vector(const nlohmann::json& j, const std::string& where);

RatMatrix json_rational_matrix(const nlohmann::json& j, const std::string& where);

nlohmann::json rational_vector_to_json(const std::vector<Rational>& v);
nlohmann::json rational_matrix_to_json(const RatMatrix& m);

} // namespace piclat
