#include <doctest.h>

#include <cmath>

#include "finslerkit/catalog.hpp"
#include "finslerkit/errors.hpp"
#include "finslerkit/norm.hpp"

using namespace finsler;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("euclidean norm evaluates the quadratic form") {
  Norm p = Norm::euclidean_identity(2);
  CHECK(p(vec2(3.0, 4.0)) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(p(vec2(0.0, 0.0)) == 0.0);
}

TEST_CASE("even-p norm values") {
  Norm p = Norm::even_p(2, 4);
  CHECK(p(vec2(1.0, 1.0)) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
  CHECK(p(vec2(1.0, 0.0)) == doctest::Approx(1.0));
  CHECK(p(vec2(0.0, 0.0)) == 0.0);
}

TEST_CASE("randers norm adds the one-form") {
  Vector beta = vec2(0.5, 0.0);
  Norm p = Norm::randers(Matrix::Identity(2, 2), beta);
  CHECK(p(vec2(1.0, 0.0)) == doctest::Approx(1.5).epsilon(1e-15));
  // Non-reversible: p(-xi) differs.
  CHECK(p(vec2(-1.0, 0.0)) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("construction rejects bad parameters") {
  Matrix not_spd(2, 2);
  not_spd << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(Norm::euclidean(not_spd), InvalidSpecError);
  CHECK_THROWS_AS(Norm::even_p(2, 3), InvalidSpecError);
  CHECK_THROWS_AS(Norm::even_p(2, 0), InvalidSpecError);
  CHECK_THROWS_AS(Norm::even_p(1, 4), InvalidSpecError);
  CHECK_THROWS_AS(Norm::randers(Matrix::Identity(2, 2), vec2(1.0, 0.0)),
                  InvalidSpecError);
  CHECK_THROWS_AS(Norm::randers(Matrix::Identity(2, 2), vec2(1.2, 0.0)),
                  InvalidSpecError);
  CHECK_THROWS_AS(Norm::scaled(Norm::euclidean_identity(2), 0.0), InvalidSpecError);
  Matrix singular = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(Norm::pullback(Norm::euclidean_identity(2), singular),
                  InvalidSpecError);
}

TEST_CASE("randers close to the degenerate edge stays positive") {
  Norm p = Norm::randers(Matrix::Identity(2, 2), vec2(0.999, 0.0));
  NormValidation report = validate_norm(p, 500, 7u);
  CHECK(report.positive());
  CHECK(report.min_on_unit_sphere > 0.0005);
}

TEST_CASE("catalog norms satisfy the axioms within 1e-12") {
  for (int dim : {2, 3}) {
    for (const auto& [name, p] : standard_catalog(dim)) {
      const std::string& norm_name = name;
      CAPTURE(norm_name);
      CAPTURE(dim);
      NormValidation report = validate_norm(p, 1000, 42u, 1e-12);
      CHECK(report.max_homogeneity_residual <= 1e-12);
      CHECK(report.max_triangle_violation <= 1e-12);
      CHECK(report.min_on_unit_sphere > 1e-12);
      CHECK(report.ok());
    }
  }
}

TEST_CASE("degree-2 homogeneous callback is flagged invalid") {
  Norm bad = Norm::callback(2, [](const Vector& xi) { return xi[0] * xi[0]; });
  NormValidation report = validate_norm(bad, 1000, 3u);
  CHECK(report.max_homogeneity_residual > 1e-3);
  CHECK_FALSE(report.ok());
}

TEST_CASE("pullback of a euclidean norm collapses to the induced form") {
  Matrix a(2, 2);
  a << 1.0, 2.0, 0.0, 1.0;
  Norm pulled = Norm::pullback(Norm::euclidean_identity(2), a);
  CHECK(pulled.family() == "euclidean");
  Norm direct = Norm::euclidean(a.transpose() * a);
  Rng rng(11u);
  for (int k = 0; k < 100; ++k) {
    Vector xi = rng.gaussian_vector(2);
    CHECK(pulled(xi) == doctest::Approx(direct(xi)).epsilon(1e-14));
  }
}

TEST_CASE("pullback by the identity changes nothing") {
  Norm p = Norm::even_p(2, 4);
  Norm pulled = Norm::pullback(p, Matrix::Identity(2, 2));
  Rng rng(5u);
  for (int k = 0; k < 100; ++k) {
    Vector xi = rng.gaussian_vector(2);
    CHECK(pulled(xi) == doctest::Approx(p(xi)).epsilon(1e-15));
  }
}

TEST_CASE("pullback by a diagonal stretch") {
  Matrix a(2, 2);
  a << 2.0, 0.0, 0.0, 1.0;
  Norm pulled = Norm::pullback(Norm::even_p(2, 4), a);
  CHECK(pulled(vec2(1.0, 0.0)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("pullback composition composes matrices") {
  Rng rng(17u);
  for (int trial = 0; trial < 3; ++trial) {
    Matrix a = rng.rotation(2) + 0.1 * rng.spd(2, 0.5, 1.0);
    Matrix b = rng.rotation(2) + 0.1 * rng.spd(2, 0.5, 1.0);
    Norm base = Norm::even_p(2, 4);
    Norm two_step = Norm::pullback(Norm::pullback(base, a), b);
    CHECK(two_step.family() == "pullback");
    Norm one_step = Norm::pullback(base, a * b);
    for (int k = 0; k < 100; ++k) {
      Vector xi = rng.gaussian_vector(2);
      CHECK(two_step(xi) == doctest::Approx(one_step(xi)).epsilon(1e-12));
    }
  }
}

TEST_CASE("scaled norm scales values") {
  Norm p = Norm::scaled(Norm::even_p(2, 4), 3.0);
  CHECK(p(vec2(1.0, 0.0)) == doctest::Approx(3.0));
}

TEST_CASE("validation rejects nonsense sample counts") {
  CHECK_THROWS_AS(validate_norm(Norm::euclidean_identity(2), 0, 1u),
                  InvalidSpecError);
}
