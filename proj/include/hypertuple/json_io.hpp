#ifndef HYPERTUPLE_JSON_IO_HPP
#define HYPERTUPLE_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "hypertuple/construct.hpp"
#include "hypertuple/orbit.hpp"

namespace hypertuple {

using ordered_json = nlohmann::ordered_json;

// Matrix format {"field":"R"|"C","n":..,"entries":[[[re,im],..],..]} used by
// every CLI command; top-level artifacts additionally carry a "schema" key.
ordered_json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& path = "");

ordered_json vector_to_json(FieldTag field, const Eigen::VectorXcd& v);
std::pair<FieldTag, Eigen::VectorXcd> vector_from_json(const nlohmann::json& j,
                                                       const std::string& path = "");

ordered_json tuple_to_json(const TupleSpec& tuple);
TupleSpec tuple_from_json(const nlohmann::json& j, const std::string& path = "");

ordered_json coverage_to_json(const CoverageReport& report);

ordered_json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const ordered_json& j);

FieldTag field_from_string(const std::string& s, const std::string& path = "");

}  // namespace hypertuple

#endif  // HYPERTUPLE_JSON_IO_HPP
