#include <doctest.h>

#include "finslerkit/catalog.hpp"
#include "finslerkit/errors.hpp"
#include "finslerkit/json_io.hpp"

using namespace finsler;

TEST_CASE("norm specs round-trip through json") {
  Rng rng(91u);
  std::vector<Norm> norms = {
      Norm::euclidean_identity(2),
      Norm::even_p(3, 6),
      catalog_norm("randers-05", 2),
      Norm::scaled(Norm::even_p(2, 4), 3.0),
      Norm::pullback(Norm::even_p(2, 4), plane_rotation(2, 0, 1, 0.4)),
  };
  for (const Norm& p : norms) {
    Norm back = norm_from_json(norm_to_json(p));
    CHECK(back.family() == p.family());
    CHECK(back.dim() == p.dim());
    for (int k = 0; k < 50; ++k) {
      Vector xi = rng.gaussian_vector(p.dim());
      CHECK(back(xi) == doctest::Approx(p(xi)).epsilon(1e-14));
    }
  }
}

TEST_CASE("json parsing failures throw InvalidSpecError") {
  CHECK_THROWS_AS(parse_norm_spec("{not json"), InvalidSpecError);
  CHECK_THROWS_AS(parse_norm_spec("[1, 2, 3]"), InvalidSpecError);
  CHECK_THROWS_AS(parse_norm_spec(R"({"family": "even_p", "dim": 2, "p": 4})"),
                  InvalidSpecError);  // missing schema
  CHECK_THROWS_AS(
      parse_norm_spec(R"({"schema": 2, "family": "even_p", "dim": 2, "p": 4})"),
      InvalidSpecError);
  CHECK_THROWS_AS(
      parse_norm_spec(R"({"schema": 1, "family": "nope", "dim": 2})"),
      InvalidSpecError);
  CHECK_THROWS_AS(
      parse_norm_spec(R"({"schema": 1, "family": "even_p", "dim": 2, "p": 3})"),
      InvalidSpecError);
  CHECK_THROWS_AS(
      parse_norm_spec(
          R"({"schema": 1, "family": "euclidean", "dim": 2, "matrix": [[1, 0], [0]]})"),
      InvalidSpecError);
}

TEST_CASE("valid specs parse") {
  Norm p = parse_norm_spec(R"({"schema": 1, "family": "even_p", "dim": 2, "p": 4})");
  CHECK(p.family() == "even_p");
  Norm r = parse_norm_spec(
      R"({"schema": 1, "family": "randers", "a": [[1, 0], [0, 1]], "beta": [0.5, 0]})");
  Vector e1(2);
  e1 << 1.0, 0.0;
  CHECK(r(e1) == doctest::Approx(1.5));
  Norm s = parse_norm_spec(
      R"({"schema": 1, "family": "scaled", "lambda": 2.0,
          "base": {"family": "even_p", "dim": 2, "p": 4}})");
  CHECK(s(e1) == doctest::Approx(2.0));
}

TEST_CASE("callback norms are not serializable") {
  Norm cb = Norm::callback(2, [](const Vector& xi) { return xi.norm(); });
  CHECK_THROWS_AS(norm_to_json(cb), InvalidSpecError);
}

TEST_CASE("quadrature and metric field exports have the expected shape") {
  SphereQuadrature quad = build_sphere_quadrature(2, 16);
  Json jq = quadrature_to_json(quad);
  CHECK(jq["dim"] == 2);
  CHECK(jq["nodes"].size() == 16);
  CHECK(jq["weights"].size() == 16);

  FinslerField field =
      FinslerField::minkowski(Box::centered(2, 1.0), Norm::euclidean_identity(2));
  MetricField metric =
      averaged_metric_field(field, 2, quad, HessianStrategy::analytic());
  Json jm = metric_field_to_json(metric);
  CHECK(jm.size() == 4);
  CHECK(jm[0].contains("x"));
  CHECK(jm[0].contains("g"));
  CHECK(jm[0].contains("min_eig"));
}
