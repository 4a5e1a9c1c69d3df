#include <doctest.h>

#include <cmath>

#include "finslerkit/errors.hpp"
#include "finslerkit/sphere.hpp"

using namespace finsler;

namespace {

using Pole = StereographicChart::Pole;

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

Vector random_tangent(Rng& rng, const Vector& q) {
  Vector xi = rng.gaussian_vector(static_cast<int>(q.size()));
  xi -= xi.dot(q) * q;
  return xi;
}

}  // namespace

TEST_CASE("stereographic basics") {
  StereographicChart north(2, Pole::North);

  SUBCASE("antipode of the pole maps to the origin with factor 1/2") {
    Vector south_pole = vec3(0.0, 0.0, -1.0);
    CHECK(north.project(south_pole).norm() < 1e-15);
    CHECK(north.factor(south_pole) == doctest::Approx(0.5));
  }

  SUBCASE("equator points are fixed in length with factor 1") {
    Vector q = vec3(std::sqrt(0.5), std::sqrt(0.5), 0.0);
    CHECK(north.project(q).norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(north.factor(q) == doctest::Approx(1.0));
  }

  SUBCASE("projection near the pole is rejected") {
    CHECK_THROWS_AS(north.project(vec3(0.0, 0.0, 1.0)), InvalidSpecError);
  }

  SUBCASE("round trips") {
    Rng rng(3u);
    for (int k = 0; k < 100; ++k) {
      Vector q = rng.unit_vector(3);
      if (1.0 - q[2] < 1e-3) continue;
      CHECK((north.unproject(north.project(q)) - q).norm() < 1e-12);
    }
    for (int k = 0; k < 100; ++k) {
      Vector z = 2.0 * rng.gaussian_vector(2);
      Vector q = north.unproject(z);
      CHECK(std::abs(q.norm() - 1.0) < 1e-14);
      CHECK((north.project(q) - z).norm() < 1e-11);
    }
  }
}

TEST_CASE("stereographic conformality") {
  StereographicChart north(3, Pole::North);
  Rng rng(8u);
  for (int k = 0; k < 50; ++k) {
    Vector q = rng.unit_vector(4);
    if (1.0 - q[3] < 1e-2) continue;
    Vector xi = random_tangent(rng, q);
    Vector eta = random_tangent(rng, q);
    double sigma = north.factor(q);
    CHECK(north.push_tangent(q, xi).dot(north.push_tangent(q, eta)) ==
          doctest::Approx(sigma * sigma * xi.dot(eta)).epsilon(1e-9));
    // Pulling back what was pushed returns the tangent vector.
    Vector back = north.pull_tangent(north.project(q), north.push_tangent(q, xi));
    CHECK((back - xi).norm() < 1e-10);
  }
}

TEST_CASE("chart transition is the inversion") {
  StereographicChart north(2, Pole::North), south(2, Pole::South);
  Rng rng(13u);
  for (int k = 0; k < 100; ++k) {
    Vector z = rng.gaussian_vector(2);
    if (z.norm() < 0.05) continue;
    Vector through_sphere = south.project(north.unproject(z));
    CHECK((through_sphere - invert_point(z)).norm() < 1e-10);
  }
}

TEST_CASE("antipodal relation between the two charts") {
  // Projecting the antipode from the north pole lands at the central
  // reflection of the south projection.
  StereographicChart north(2, Pole::North), south(2, Pole::South);
  Rng rng(14u);
  for (int k = 0; k < 50; ++k) {
    Vector q = rng.unit_vector(3);
    if (std::abs(q[2]) > 0.99) continue;
    CHECK((north.project(-q) + south.project(q)).norm() < 1e-12);
  }
}

TEST_CASE("inversion point examples and involution") {
  CHECK((invert_point(vec2(2.0, 0.0)) - vec2(0.5, 0.0)).norm() < 1e-15);
  Rng rng(21u);
  for (int k = 0; k < 50; ++k) {
    Vector z = rng.gaussian_vector(3);
    if (z.norm() < 0.05) continue;
    CHECK((invert_point(invert_point(z)) - z).norm() < 1e-12);
  }
  CHECK_THROWS_AS(invert_point(Vector::Zero(2)), InvalidSpecError);
}

TEST_CASE("inversion differential on the unit sphere is the reflection") {
  Vector e1 = vec3(1.0, 0.0, 0.0);
  Matrix expected = Matrix::Identity(3, 3);
  expected(0, 0) = -1.0;
  CHECK((inversion_jacobian(e1) - expected).cwiseAbs().maxCoeff() < 1e-14);

  // Finite differences confirm the closed form.
  Rng rng(22u);
  for (int trial = 0; trial < 20; ++trial) {
    Vector q = rng.unit_vector(3);
    Matrix fd(3, 3);
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
      Vector probe = q;
      probe[j] = q[j] + h;
      Vector fp = invert_point(probe);
      probe[j] = q[j] - h;
      Vector fm = invert_point(probe);
      fd.col(j) = (fp - fm) / (2.0 * h);
    }
    Matrix analytic = inversion_jacobian(q);
    CHECK((fd - analytic).cwiseAbs().maxCoeff() < 1e-8);
    // R_q = I - 2 q q' on the unit sphere.
    Matrix reflection = Matrix::Identity(3, 3) - 2.0 * q * q.transpose();
    CHECK((analytic - reflection).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("reflections compose to orthogonal maps") {
  Rng rng(23u);
  Matrix product = Matrix::Identity(3, 3);
  for (int k = 0; k < 6; ++k)
    product = inversion_jacobian(rng.unit_vector(3)) * product;
  CHECK((product.transpose() * product - Matrix::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() < 1e-8);

  // In the plane, two reflections make a rotation by twice the angle gap.
  Vector u = vec2(1.0, 0.0);
  double theta = 0.35;
  Vector w = vec2(std::cos(theta), std::sin(theta));
  Matrix rot = inversion_jacobian(w) * inversion_jacobian(u);
  CHECK(rot(0, 0) == doctest::Approx(std::cos(2.0 * theta)).epsilon(1e-12));
  CHECK(rot(1, 0) == doctest::Approx(std::sin(2.0 * theta)).epsilon(1e-12));
}

TEST_CASE("moebius map formula values") {
  Matrix a = Matrix::Identity(2, 2);
  Vector b = vec2(1.0, 0.0);
  MobiusMap map(a, b);

  SUBCASE("origin is fixed with factor exactly 1") {
    CHECK(map.apply(Vector::Zero(2)).norm() == 0.0);
    CHECK(map.factor(Vector::Zero(2)) == 1.0);
  }

  SUBCASE("worked example at q = e1") {
    CHECK((map.apply(vec2(1.0, 0.0)) - vec2(0.5, 0.0)).norm() < 1e-15);
    CHECK(map.factor(vec2(1.0, 0.0)) == doctest::Approx(0.25));
  }

  SUBCASE("differential at the origin is the rotation part") {
    Matrix j = map.jacobian(Vector::Zero(2));
    CHECK((j - a).cwiseAbs().maxCoeff() < 1e-14);
    // FD confirmation.
    Matrix fd(2, 2);
    const double h = 1e-6;
    for (int col = 0; col < 2; ++col) {
      Vector probe = Vector::Zero(2);
      probe[col] = h;
      Vector fp = map.apply(probe);
      probe[col] = -h;
      Vector fm = map.apply(probe);
      fd.col(col) = (fp - fm) / (2.0 * h);
    }
    CHECK((fd - a).cwiseAbs().maxCoeff() < 1e-8);
  }

  SUBCASE("conjugation by the inversion gives the affine map") {
    Rng rng(31u);
    for (int k = 0; k < 100; ++k) {
      Vector q = rng.gaussian_vector(2);
      if (q.norm() < 0.1) continue;
      Vector affine = a * invert_point(q) + b;
      if (affine.norm() < 0.1) continue;
      CHECK((invert_point(affine) - map.apply(q)).norm() < 1e-10);
    }
  }
}

TEST_CASE("moebius validation") {
  Matrix rot = plane_rotation(2, 0, 1, 0.5);
  CHECK_THROWS_AS(MobiusMap(rot, vec2(1.0, 0.0)), InvalidSpecError);  // Ab != b
  Matrix bad = 2.0 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(MobiusMap(bad, vec2(1.0, 0.0)), InvalidSpecError);
  CHECK_THROWS_AS(MobiusMap(Matrix::Identity(2, 2), Vector::Zero(2)),
                  InvalidSpecError);
  // In R^3 a rotation about the b axis is allowed.
  Matrix a3 = plane_rotation(3, 0, 1, 0.7);
  Vector b3 = vec3(0.0, 0.0, 2.0);
  CHECK_NOTHROW(MobiusMap(a3, b3));
}

TEST_CASE("v1 field vanishes exactly at the pole and matches an fd oracle") {
  StereographicChart north(2, Pole::North);
  Vector b = vec2(0.7, -0.2);
  VectorField v1 = v1_field(north, b);

  CHECK(v1(vec3(0.0, 0.0, 1.0)).norm() == 0.0);

  // At the antipode: |v1| = |b| / sigma = 2 |b|, and the value agrees with a
  // finite difference of the inverse projection along b.
  Vector antipode = vec3(0.0, 0.0, -1.0);
  Vector value = v1(antipode);
  CHECK(value.norm() == doctest::Approx(2.0 * b.norm()).epsilon(1e-12));
  const double h = 1e-6;
  Vector fd = (north.unproject(h * b) - north.unproject(-h * b)) / (2.0 * h);
  CHECK((value - fd).norm() < 1e-8);

  // Tangency along a trajectory.
  Rng rng(37u);
  for (int k = 0; k < 20; ++k) {
    Vector q = rng.unit_vector(3);
    if (1.0 - q[2] < 1e-2) continue;
    CHECK(std::abs(v1(q).dot(q)) < 1e-12);
  }
}

TEST_CASE("rk4 flow of v1 matches the exact chart flow") {
  StereographicChart north(2, Pole::North);
  Vector b = vec2(1.0, 0.0);
  VectorField v1 = v1_field(north, b);
  Rng rng(41u);
  for (int k = 0; k < 10; ++k) {
    Vector q = rng.unit_vector(3);
    if (1.0 - q[2] < 5e-2) continue;
    Vector numeric = flow_point(v1, q, 1.0, 2000);
    Vector exact = v1_flow(north, b, q, 1.0);
    CHECK((numeric - exact).norm() < 1e-8);
    CHECK(std::abs(numeric.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("v1 trajectories converge to the pole at long horizons") {
  StereographicChart north(2, Pole::North);
  // Asymptotic statement probed at t = +-30; the chart drift is t |b|, so
  // |b| = 100 puts every start within 1e-3 of the pole by then.
  Vector b = vec2(100.0, 0.0);
  VectorField v1 = v1_field(north, b);
  Vector pole = vec3(0.0, 0.0, 1.0);
  Rng rng(43u);
  int tested = 0;
  while (tested < 20) {
    Vector q = rng.unit_vector(3);
    if (north.factor(q) > 5.0) continue;  // start away from the pole
    ++tested;
    for (double sign : {1.0, -1.0}) {
      Vector exact = v1_flow(north, b, q, sign * 30.0);
      CHECK((exact - pole).norm() < 1e-3);
    }
  }
  // The integrator agrees at the same horizon on a couple of starts.
  for (int k = 0; k < 2; ++k) {
    Vector q = rng.unit_vector(3);
    if (north.factor(q) > 5.0) { --k; continue; }
    Vector numeric = flow_point(v1, q, 30.0, 60000);
    CHECK((numeric - pole).norm() < 1e-3);
  }
}

TEST_CASE("normalized v1 attains every tangent direction near the pole") {
  // Near the pole the normalized field approaches the reflection of b in the
  // chart approach direction: v1(k w) is parallel to b - 2 <w, b> w for unit
  // w and large k. Reflections of a fixed unit vector sweep the whole
  // circle, so every unit tangent at the pole is a limit of v1 / |v1|.
  StereographicChart north(2, StereographicChart::Pole::North);
  Vector b = vec2(1.0, 0.0);
  VectorField v1 = v1_field(north, b);
  const double k = 1e4;
  const int n_dirs = 64;

  std::vector<Vector> limit_dirs;
  for (int i = 0; i < n_dirs; ++i) {
    double phi = 2.0 * M_PI * i / n_dirs;
    Vector w = vec2(std::cos(phi), std::sin(phi));
    Vector q = north.unproject(k * w);
    Vector dir = v1(q);
    REQUIRE(dir.norm() > 0.0);
    dir /= dir.norm();
    // Tangent at (numerically) the pole, and equal to the reflection.
    CHECK(std::abs(dir[2]) < 1e-3);
    Vector reflected = b - 2.0 * w.dot(b) * w;
    CHECK((dir.head(2) - reflected).norm() < 1e-3);
    limit_dirs.push_back(dir);
  }

  for (int j = 0; j < 8; ++j) {
    double target_phi = 2.0 * M_PI * j / 8 + 0.1;
    Vector target = vec3(std::cos(target_phi), std::sin(target_phi), 0.0);
    double best = -1.0;
    for (const Vector& dir : limit_dirs) best = std::max(best, dir.dot(target));
    CHECK(best > std::cos(0.15));
  }
}

TEST_CASE("trajectories arrive at the pole with a common tangent") {
  StereographicChart north(2, StereographicChart::Pole::North);
  Vector b = vec2(1.0, 0.0);
  VectorField v1 = v1_field(north, b);
  Rng rng(67u);
  Vector arrival = vec3(-1.0, 0.0, 0.0);  // reflection of b in its own direction
  for (int k = 0; k < 5; ++k) {
    Vector q = rng.unit_vector(3);
    if (north.factor(q) > 4.0) { --k; continue; }
    Vector moved = v1_flow(north, b, q, 500.0);
    Vector dir = v1(moved);
    dir /= dir.norm();
    CHECK((dir - arrival).norm() < 1e-2);
  }
}

TEST_CASE("tangent bases are orthonormal completions") {
  Rng rng(47u);
  for (int k = 0; k < 20; ++k) {
    Vector q = rng.unit_vector(4);
    Matrix basis = tangent_basis(q);
    CHECK((basis.transpose() * basis - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <
          1e-13);
    CHECK((basis.transpose() * q).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("sphere constructors validate their inputs") {
  StereographicChart north(2, StereographicChart::Pole::North);
  CHECK_THROWS_AS(v1_field(north, Vector::Zero(2)), InvalidSpecError);
  Vector bad_dim(3);
  bad_dim << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(v1_field(north, bad_dim), InvalidSpecError);
  CHECK_THROWS_AS(SphereFinsler::round(2, 0.0), InvalidSpecError);
  CHECK_THROWS_AS(SphereFinsler::pushforward(north, Norm::even_p(3, 4)),
                  InvalidSpecError);
  SphereFinsler round1 = SphereFinsler::round(2, 1.0);
  CHECK_THROWS_AS(
      averaged_sphere_metric(round1, build_sphere_quadrature(3, 16),
                             HessianStrategy::analytic()),
      InvalidSpecError);
}

TEST_CASE("m and M for round metrics") {
  StereographicChart north(2, Pole::North);
  Vector b = vec2(1.0, 0.0);
  SphereQuadrature quad = build_sphere_quadrature(2, 128);
  HessianStrategy strategy = HessianStrategy::analytic();
  Rng rng(53u);

  SphereFinsler round1 = SphereFinsler::round(2, 1.0);
  SphereFinsler round3 = SphereFinsler::round(2, 3.0);
  SphereMetric g1 = round_metric();
  SphereMetric g_avg1 = averaged_sphere_metric(round1, quad, strategy);
  SphereMetric g_avg3 = averaged_sphere_metric(round3, quad, strategy);

  for (int k = 0; k < 10; ++k) {
    Vector q = rng.unit_vector(3);
    if (std::abs(q[2]) > 0.95) continue;
    // Against the reference round metric, m picks up the square of the scale.
    CHECK(m_function(round1, g1, north, b, q) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(m_function(round3, g1, north, b, q) == doctest::Approx(9.0).epsilon(1e-8));
    // Against each metric's own 2n-normalized average the ratio is 1.
    CHECK(m_function(round1, g_avg1, north, b, q) ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(m_function(round3, g_avg3, north, b, q) ==
          doctest::Approx(1.0).epsilon(1e-8));
    // Directional oscillation vanishes for round metrics.
    CHECK(big_m_function(round3, g_avg3, q, 64, 7u) < 1e-8);
  }

  CHECK_THROWS_AS(m_function(round1, g1, north, b, vec3(0.0, 0.0, 1.0)),
                  InvalidSpecError);
}

TEST_CASE("m is invariant along the v1 flow") {
  StereographicChart north(2, Pole::North);
  Vector b = vec2(1.0, 0.0);
  SphereQuadrature quad = build_sphere_quadrature(2, 192);
  HessianStrategy strategy = HessianStrategy::analytic();

  SphereFinsler quartic = SphereFinsler::pushforward(north, Norm::even_p(2, 4));
  SphereMetric g = averaged_sphere_metric(quartic, quad, strategy);

  Rng rng(59u);
  int tested = 0;
  while (tested < 5) {
    Vector q = rng.unit_vector(3);
    if (north.factor(q) > 3.0) continue;
    ++tested;
    double reference = m_function(quartic, g, north, b, q);
    for (double t : {1.0, 2.0, 5.0}) {
      Vector moved = v1_flow(north, b, q, t);
      CHECK(std::abs(m_function(quartic, g, north, b, moved) - reference) < 1e-5);
    }
  }
}

TEST_CASE("pushforward of the euclidean norm is the round metric") {
  StereographicChart north(2, Pole::North);
  SphereFinsler pushed = SphereFinsler::pushforward(north, Norm::euclidean_identity(2));
  SphereFinsler round1 = SphereFinsler::round(2, 1.0);
  Rng rng(61u);
  for (int k = 0; k < 20; ++k) {
    Vector q = rng.unit_vector(3);
    if (1.0 - q[2] < 1e-2) continue;
    Vector xi = random_tangent(rng, q);
    CHECK(pushed(q, xi) == doctest::Approx(round1(q, xi)).epsilon(1e-10));
  }
}

TEST_CASE("h_A isometry probe separates euclidean from quartic") {
  // Rotation about the b axis in R^3 with full period at the probe depth.
  int depth = 40;
  Matrix a = plane_rotation(3, 0, 1, 2.0 * M_PI / depth);
  Vector b = vec3(0.0, 0.0, 1.0);
  MobiusMap fbar(a, b);
  Vector z0 = vec3(0.8, -0.3, 0.4);
  Vector xi0 = vec3(0.3, 0.9, -0.2);

  HaProbe euclid = ha_isometry_probe(Norm::euclidean_identity(3), fbar, z0, xi0, depth);
  CHECK(euclid.direct_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(euclid.drift < 1e-9);

  HaProbe quartic = ha_isometry_probe(Norm::even_p(3, 4), fbar, z0, xi0, depth);
  CHECK(quartic.drift > 1e-2);
}
