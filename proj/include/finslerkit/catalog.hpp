#pragma once

#include <string>
#include <utility>
#include <vector>

#include "finslerkit/norm.hpp"
#include "finslerkit/vector_field.hpp"

namespace finsler {

/// Named norms used across demos and tests:
///   euclid-identity       sqrt(xi . xi)
///   even-p / quartic      (sum xi_i^p)^{1/p}, p even (quartic fixes p = 4)
///   randers-02 / -05      |xi| + beta . xi with beta = 0.2 e1 / 0.5 e1
Norm catalog_norm(const std::string& name, int dim, int p = 4);

/// The standard test catalog: euclidean, quartic, and both Randers norms.
std::vector<std::pair<std::string, Norm>> standard_catalog(int dim);

/// Named vector fields:
///   radial         v(x) = x
///   rotation       generator of the (x1, x2) plane rotation
///   shear          v(x) = (x2, x1, 0, ...)
///   translation    v(x) = b (defaults to e1)
///   mobius         special-conformal generator with c = e1
VectorField catalog_field(const std::string& name, int dim);
VectorField catalog_field(const std::string& name, int dim, const Vector& b);

}  // namespace finsler
