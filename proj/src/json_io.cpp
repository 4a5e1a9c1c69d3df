#include "finslerkit/json_io.hpp"

#include "finslerkit/bilinear_form.hpp"
#include "finslerkit/errors.hpp"

namespace finsler {

namespace {

const Json& require_field(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    throw InvalidSpecError(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

int require_int(const Json& j, const char* key, const char* what) {
  const Json& v = require_field(j, key, what);
  if (!v.is_number_integer())
    throw InvalidSpecError(std::string(what) + ": field '" + key + "' must be an integer");
  return v.get<int>();
}

double require_number(const Json& j, const char* key, const char* what) {
  const Json& v = require_field(j, key, what);
  if (!v.is_number())
    throw InvalidSpecError(std::string(what) + ": field '" + key + "' must be a number");
  return v.get<double>();
}

Norm norm_from_json_inner(const Json& spec) {
  if (!spec.is_object()) throw InvalidSpecError("norm spec: not a JSON object");
  std::string family = require_field(spec, "family", "norm spec").get<std::string>();
  if (family == "euclidean")
    return Norm::euclidean(matrix_from_json(require_field(spec, "matrix", "norm spec"),
                                            "norm spec matrix"));
  if (family == "even_p")
    return Norm::even_p(require_int(spec, "dim", "norm spec"),
                        require_int(spec, "p", "norm spec"));
  if (family == "randers")
    return Norm::randers(
        matrix_from_json(require_field(spec, "a", "norm spec"), "norm spec a"),
        vector_from_json(require_field(spec, "beta", "norm spec"), "norm spec beta"));
  if (family == "scaled")
    return Norm::scaled(norm_from_json_inner(require_field(spec, "base", "norm spec")),
                        require_number(spec, "lambda", "norm spec"));
  if (family == "pullback")
    return Norm::pullback(norm_from_json_inner(require_field(spec, "base", "norm spec")),
                          matrix_from_json(require_field(spec, "matrix", "norm spec"),
                                           "norm spec matrix"));
  throw InvalidSpecError("norm spec: unknown family '" + family + "'");
}

Json describe_to_json(const NormDescription& d) {
  Json out;
  out["family"] = d.family;
  if (d.family == "euclidean") {
    out["dim"] = d.dim;
    out["matrix"] = matrix_to_json(d.matrix);
  } else if (d.family == "even_p") {
    out["dim"] = d.dim;
    out["p"] = d.p;
  } else if (d.family == "randers") {
    out["dim"] = d.dim;
    out["a"] = matrix_to_json(d.matrix);
    out["beta"] = vector_to_json(d.vector);
  } else if (d.family == "scaled") {
    out["lambda"] = d.scalar;
    out["base"] = describe_to_json(*d.base);
  } else if (d.family == "pullback") {
    out["matrix"] = matrix_to_json(d.matrix);
    out["base"] = describe_to_json(*d.base);
  } else {
    throw InvalidSpecError("norm family '" + d.family + "' is not serializable");
  }
  return out;
}

}  // namespace

Norm norm_from_json(const Json& spec) {
  if (!spec.is_object()) throw InvalidSpecError("norm spec: not a JSON object");
  int schema = require_int(spec, "schema", "norm spec");
  if (schema != 1) throw InvalidSpecError("norm spec: unsupported schema version");
  return norm_from_json_inner(spec);
}

Json norm_to_json(const Norm& norm) {
  Json out;
  out["schema"] = 1;
  Json body = describe_to_json(norm.describe());
  for (auto& [key, value] : body.items()) out[key] = value;
  return out;
}

Norm parse_norm_spec(const std::string& text) {
  Json parsed = Json::parse(text, nullptr, false);
  if (parsed.is_discarded())
    throw InvalidSpecError("norm spec: malformed JSON");
  return norm_from_json(parsed);
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Matrix matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw InvalidSpecError(std::string(what) + ": expected a non-empty array of rows");
  const auto rows = j.size();
  size_t cols = 0;
  Matrix m;
  for (size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.empty())
      throw InvalidSpecError(std::string(what) + ": rows must be non-empty arrays");
    if (i == 0) {
      cols = row.size();
      m.resize(rows, cols);
    } else if (row.size() != cols) {
      throw InvalidSpecError(std::string(what) + ": ragged rows");
    }
    for (size_t k = 0; k < cols; ++k) {
      if (!row[k].is_number())
        throw InvalidSpecError(std::string(what) + ": entries must be numbers");
      m(i, k) = row[k].get<double>();
    }
  }
  return m;
}

Vector vector_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw InvalidSpecError(std::string(what) + ": expected a non-empty array");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      throw InvalidSpecError(std::string(what) + ": entries must be numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

Json quadrature_to_json(const SphereQuadrature& quad) {
  Json out;
  out["dim"] = quad.dim;
  out["order"] = quad.order;
  out["nodes"] = matrix_to_json(quad.nodes);
  out["weights"] = vector_to_json(quad.weights);
  return out;
}

Json metric_field_to_json(const MetricField& field) {
  Json out = Json::array();
  for (size_t i = 0; i < field.points.size(); ++i) {
    Json entry;
    entry["x"] = vector_to_json(field.points[i]);
    entry["g"] = matrix_to_json(field.forms[i].matrix());
    entry["min_eig"] = field.forms[i].min_eigenvalue();
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace finsler
