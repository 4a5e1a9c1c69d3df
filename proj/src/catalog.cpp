#include "finslerkit/catalog.hpp"

#include "finslerkit/errors.hpp"

namespace finsler {

namespace {

Norm randers_with(double beta1, int dim) {
  Vector beta = Vector::Zero(dim);
  beta[0] = beta1;
  return Norm::randers(Matrix::Identity(dim, dim), beta);
}

}  // namespace

Norm catalog_norm(const std::string& name, int dim, int p) {
  if (name == "euclid-identity") return Norm::euclidean_identity(dim);
  if (name == "even-p") return Norm::even_p(dim, p);
  if (name == "quartic") return Norm::even_p(dim, 4);
  if (name == "randers-02") return randers_with(0.2, dim);
  if (name == "randers-05") return randers_with(0.5, dim);
  throw InvalidSpecError("unknown catalog norm '" + name + "'");
}

std::vector<std::pair<std::string, Norm>> standard_catalog(int dim) {
  return {{"euclid-identity", catalog_norm("euclid-identity", dim)},
          {"quartic", catalog_norm("quartic", dim)},
          {"randers-02", catalog_norm("randers-02", dim)},
          {"randers-05", catalog_norm("randers-05", dim)}};
}

VectorField catalog_field(const std::string& name, int dim) {
  Vector e1 = Vector::Zero(dim);
  e1[0] = 1.0;
  return catalog_field(name, dim, e1);
}

VectorField catalog_field(const std::string& name, int dim, const Vector& b) {
  if (name == "radial") return VectorField::radial(dim);
  if (name == "rotation") return VectorField::rotation(dim, 0, 1);
  if (name == "translation") return VectorField::translation(b);
  if (name == "shear") {
    Matrix m = Matrix::Zero(dim, dim);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return VectorField::linear(m);
  }
  if (name == "mobius")
    return VectorField::mobius_generator(Matrix::Zero(dim, dim), b);
  throw InvalidSpecError("unknown catalog field '" + name + "'");
}

}  // namespace finsler
