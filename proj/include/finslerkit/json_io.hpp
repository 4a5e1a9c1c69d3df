#pragma once

#include <json.hpp>

#include "finslerkit/averaged_metric.hpp"
#include "finslerkit/norm.hpp"
#include "finslerkit/quadrature.hpp"

namespace finsler {

using Json = nlohmann::ordered_json;

/// Norm specs are JSON objects with a versioned "schema": 1 field:
///   {"schema": 1, "family": "euclidean", "dim": 2, "matrix": [[1,0],[0,1]]}
///   {"schema": 1, "family": "even_p", "dim": 2, "p": 4}
///   {"schema": 1, "family": "randers", "dim": 2, "a": [[..]], "beta": [..]}
///   {"schema": 1, "family": "scaled", "lambda": 3.0, "base": {..}}
///   {"schema": 1, "family": "pullback", "matrix": [[..]], "base": {..}}
/// Nested "base" objects may omit "schema". Malformed specs throw
/// InvalidSpecError.
Norm norm_from_json(const Json& spec);
Json norm_to_json(const Norm& norm);
Norm parse_norm_spec(const std::string& text);

Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);
Matrix matrix_from_json(const Json& j, const char* what);
Vector vector_from_json(const Json& j, const char* what);

Json quadrature_to_json(const SphereQuadrature& quad);
Json metric_field_to_json(const MetricField& field);

}  // namespace finsler
