#pragma once

#include <functional>

#include "finslerkit/linalg.hpp"
#include "finslerkit/norm.hpp"

namespace finsler {

/// Quadrature nodes and weights on the euclidean unit sphere S^{n-1}.
/// Weights are positive and sum to the euclidean surface area; `order` is
/// the declared polynomial exactness of the rule.
struct SphereQuadrature {
  int dim = 0;      // ambient dimension n
  Matrix nodes;     // K x n, unit rows
  Vector weights;   // K, positive
  int order = 0;
};

/// n = 2: uniform trapezoid rule on the circle (spectrally accurate for
/// smooth periodic integrands). n >= 3: product of Gauss-Gegenbauer rules in
/// the polar angles (cos-substituted, so the spherical Jacobian is the
/// Gegenbauer weight) with the circle rule in azimuth. Product rules stay
/// tractable up to n = 6 or so.
SphereQuadrature build_sphere_quadrature(int dim, int resolution);

double euclidean_sphere_area(int dim);

int default_resolution(int dim);

/// Lebesgue volume of the unit ball {p <= 1}, computed radially:
/// V = (1/n) sum_k w_k r(u_k)^n with r(u) = 1/p(u).
double unit_ball_volume(const Norm& norm, const SphereQuadrature& quad);

/// Integral of f over the indicatrix S_1 = {p = 1} against the canonical
/// volume form omega (the one induced by normalizing Lebesgue measure to
/// unit-ball volume 1). Under the radial parametrization xi(u) = r(u) u the
/// pullback of omega is (r^n / V) times the euclidean spherical measure, so
/// the sum is (1/V) sum_k w_k r(u_k)^n f(xi(u_k)). For any norm the constant
/// integrand 1 integrates to n.
double indicatrix_integral(const Norm& norm,
                           const std::function<double(const Vector&)>& integrand,
                           const SphereQuadrature& quad);

/// max r / min r over the quadrature nodes; a conditioning diagnostic for
/// strongly anisotropic norms.
double radial_anisotropy(const Norm& norm, const SphereQuadrature& quad);

}  // namespace finsler
