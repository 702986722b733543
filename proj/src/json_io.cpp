#include "piclat/json_io.hpp"

#include "piclat/errors.hpp"

#include <fstream>

namespace piclat {

nlohmann::json load_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ParseError("cannot open \"" + file.string() + "\"");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(file.string() + ": " + e.what());
    }
}

Rational json_rational(const nlohmann::json& j, const std::string& where) {
    try {
        if (j.is_number_integer())
            return Rational(static_cast<long>(j.get<long long>()));
        if (j.is_string())
            return Rational::parse(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected rational string");
}

std::vector<Rational> json_rational_vector(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array())
        throw ParseError(where + ": expected array");
    std::vector<Rational> v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(json_rational(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

RatMatrix json_rational_matrix(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw ParseError(where + ": expected non-empty array of rows");
    const std::size_t rows = j.size();
    std::vector<std::vector<Rational>> data;
    data.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i)
        data.push_back(json_rational_vector(j[i], where + "[" + std::to_string(i) + "]"));
    const std::size_t cols = data[0].size();
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (data[i].size() != cols)
            throw ParseError(where + ": ragged rows");
        for (std::size_t k = 0; k < cols; ++k)
            m.at(i, k) = data[i][k];
    }
    return m;
}

nlohmann::json rational_vector_to_json(const std::vector<Rational>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const Rational& r : v)
        a.push_back(r.str());
    return a;
}

nlohmann::json rational_matrix_to_json(const RatMatrix& m) {
    nlohmann::json a = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m.at(i, j).str());
        a.push_back(row);
    }
    return a;
}

} // namespace piclat
