#include "hypertuple/json_io.hpp"

#include <cmath>
#include <fstream>

namespace hypertuple {

namespace {

const nlohmann::json& require_key(const nlohmann::json& j, const char* key,
                                  const std::string& path) {
  if (!j.is_object()) throw SchemaError("at " + (path.empty() ? "/" : path) + ": expected object");
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError("at " + path + "/" + key + ": missing required key");
  }
  return *it;
}

double as_finite_double(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError("at " + path + ": expected number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError("at " + path + ": value must be finite");
  return v;
}

long long as_integer(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError("at " + path + ": expected integer");
  return j.get<long long>();
}

}  // namespace

FieldTag field_from_string(const std::string& s, const std::string& path) {
  if (s == "R") return FieldTag::Real;
  if (s == "C") return FieldTag::Complex;
  throw SchemaError("at " + path + ": field must be \"R\" or \"C\", got \"" + s + "\"");
}

ordered_json matrix_to_json(const Matrix& m) {
  ordered_json entries = ordered_json::array();
  for (int i = 0; i < m.n(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.n(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    entries.push_back(std::move(row));
  }
  return ordered_json{{"field", field_name(m.field())}, {"n", m.n()}, {"entries", entries}};
}

Matrix matrix_from_json(const nlohmann::json& j, const std::string& path) {
  const FieldTag field =
      field_from_string(require_key(j, "field", path).get<std::string>(), path + "/field");
  const long long n = as_integer(require_key(j, "n", path), path + "/n");
  const auto& entries = require_key(j, "entries", path);
  if (!entries.is_array() || static_cast<long long>(entries.size()) != n) {
    throw SchemaError("at " + path + "/entries: expected " + std::to_string(n) + " rows");
  }
  Eigen::MatrixXcd m(n, n);
  for (long long i = 0; i < n; ++i) {
    const auto& row = entries[i];
    const std::string rpath = path + "/entries/" + std::to_string(i);
    if (!row.is_array() || static_cast<long long>(row.size()) != n) {
      throw SchemaError("at " + rpath + ": expected " + std::to_string(n) + " entries");
    }
    for (long long k = 0; k < n; ++k) {
      const auto& cell = row[k];
      const std::string cpath = rpath + "/" + std::to_string(k);
      if (!cell.is_array() || cell.size() != 2) {
        throw SchemaError("at " + cpath + ": expected [re, im]");
      }
      const double re = as_finite_double(cell[0], cpath + "/0");
      const double im = as_finite_double(cell[1], cpath + "/1");
      if (field == FieldTag::Real && im != 0.0) {
        throw SchemaError("at " + cpath + ": real matrices must have im = 0");
      }
      m(i, k) = {re, im};
    }
  }
  try {
    return Matrix(field, m);
  } catch (const Error& e) {
    throw SchemaError("at " + (path.empty() ? "/" : path) + ": " + e.what());
  }
}

ordered_json vector_to_json(FieldTag field, const Eigen::VectorXcd& v) {
  ordered_json entries = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) entries.push_back({v(i).real(), v(i).imag()});
  return ordered_json{{"schema", "hypertuple.vector/1"},
                      {"field", field_name(field)},
                      {"n", v.size()},
                      {"entries", entries}};
}

std::pair<FieldTag, Eigen::VectorXcd> vector_from_json(const nlohmann::json& j,
                                                       const std::string& path) {
  const FieldTag field =
      field_from_string(require_key(j, "field", path).get<std::string>(), path + "/field");
  const long long n = as_integer(require_key(j, "n", path), path + "/n");
  const auto& entries = require_key(j, "entries", path);
  if (!entries.is_array() || static_cast<long long>(entries.size()) != n) {
    throw SchemaError("at " + path + "/entries: expected " + std::to_string(n) + " pairs");
  }
  Eigen::VectorXcd v(n);
  for (long long i = 0; i < n; ++i) {
    const auto& cell = entries[i];
    const std::string cpath = path + "/entries/" + std::to_string(i);
    if (!cell.is_array() || cell.size() != 2) {
      throw SchemaError("at " + cpath + ": expected [re, im]");
    }
    const double re = as_finite_double(cell[0], cpath + "/0");
    const double im = as_finite_double(cell[1], cpath + "/1");
    if (field == FieldTag::Real && im != 0.0) {
      throw SchemaError("at " + cpath + ": real vectors must have im = 0");
    }
    v(i) = {re, im};
  }
  return {field, v};
}

namespace {

AlphaScheme alpha_scheme_from_name(const std::string& s, const std::string& path) {
  if (s == "SQRT_PRIMES") return AlphaScheme::SqrtPrimes;
  if (s == "LOG_PRIMES") return AlphaScheme::LogPrimes;
  if (s == "USER") return AlphaScheme::User;
  throw SchemaError("at " + path + ": unknown alpha scheme \"" + s + "\"");
}

}  // namespace

ordered_json tuple_to_json(const TupleSpec& tuple) {
  ordered_json ops = ordered_json::array();
  for (const auto& op : tuple.operators) ops.push_back(matrix_to_json(op));
  return ordered_json{
      {"schema", "hypertuple.tuple/1"},
      {"field", field_name(tuple.field)},
      {"n", tuple.n},
      {"predicted_size", tuple.predicted_size},
      {"provenance",
       ordered_json{{"algebra_id", tuple.provenance.algebra_id},
                    {"construction", construction_name(tuple.provenance.construction)},
                    {"alpha_scheme", alpha_scheme_name(tuple.provenance.alpha_scheme)},
                    {"seed", tuple.provenance.seed}}},
      {"operators", ops}};
}

TupleSpec tuple_from_json(const nlohmann::json& j, const std::string& path) {
  TupleSpec tuple;
  tuple.field = field_from_string(require_key(j, "field", path).get<std::string>(),
                                  path + "/field");
  tuple.n = static_cast<int>(as_integer(require_key(j, "n", path), path + "/n"));
  tuple.predicted_size =
      static_cast<int>(as_integer(require_key(j, "predicted_size", path), path + "/predicted_size"));
  const auto& prov = require_key(j, "provenance", path);
  tuple.provenance.algebra_id =
      require_key(prov, "algebra_id", path + "/provenance").get<std::string>();
  tuple.provenance.construction = construction_from_name(
      require_key(prov, "construction", path + "/provenance").get<std::string>());
  tuple.provenance.alpha_scheme = alpha_scheme_from_name(
      require_key(prov, "alpha_scheme", path + "/provenance").get<std::string>(),
      path + "/provenance/alpha_scheme");
  tuple.provenance.seed =
      require_key(prov, "seed", path + "/provenance").get<std::uint64_t>();
  const auto& ops = require_key(j, "operators", path);
  if (!ops.is_array() || ops.empty()) {
    throw SchemaError("at " + path + "/operators: expected a non-empty array");
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    tuple.operators.push_back(
        matrix_from_json(ops[i], path + "/operators/" + std::to_string(i)));
    if (tuple.operators.back().n() != tuple.n || tuple.operators.back().field() != tuple.field) {
      throw SchemaError("at " + path + "/operators/" + std::to_string(i) +
                        ": operator does not match the tuple's field or dimension");
    }
  }
  return tuple;
}

ordered_json coverage_to_json(const CoverageReport& report) {
  return ordered_json{
      {"schema", "hypertuple.coverage/1"},
      {"grid_per_axis", report.grid_per_axis},
      {"budget_degrees", report.budget_degrees},
      {"coverage", report.coverage},
      {"points_total", report.points_total},
      {"points_in_box", report.points_in_box},
      {"points_nonfinite", report.points_nonfinite},
      {"cells_total", report.cells_total},
      {"cells_hit", report.cells_hit},
      {"final_coverage", report.final_coverage()},
      {"verdict", density_verdict_name(report.verdict)},
      {"thresholds",
       ordered_json{{"dense", report.thresholds.dense},
                    {"sparse", report.thresholds.sparse},
                    {"plateau_eps", report.thresholds.plateau_eps}}}};
}

ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace hypertuple
