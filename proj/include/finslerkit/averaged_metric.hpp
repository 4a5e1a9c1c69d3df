#pragma once

#include <vector>

#include "finslerkit/bilinear_form.hpp"
#include "finslerkit/finsler_field.hpp"
#include "finslerkit/hessian.hpp"
#include "finslerkit/quadrature.hpp"

namespace finsler {

/// The averaged inner product of a norm: the entrywise indicatrix integral
/// of the Hessian of p^2,
///     g(eta, nu) = int_{S_1} b_(xi)(eta, nu) omega.
/// Positive semidefiniteness of every b_(xi) plus b_(xi)(xi, xi) > 0 make g
/// positive definite; a PD failure (coarse quadrature, invalid norm) throws
/// DefinitenessError carrying the witness eigenvalue.
///
/// For p(xi) = sqrt(b1(xi, xi)) the result is 2n * b1: the Hessian is the
/// constant 2 b1 and the canonical normalization gives int omega = n.
SymBilinearForm averaged_form(const Norm& norm, const SphereQuadrature& quad,
                              const HessianStrategy& strategy);

/// Averaged metric sampled on a uniform grid over the chart.
struct MetricField {
  std::vector<int> grid_shape;       // points per axis
  std::vector<Vector> points;        // row-major over the grid
  std::vector<SymBilinearForm> forms;
};

MetricField averaged_metric_field(const FinslerField& field, int points_per_axis,
                                  const SphereQuadrature& quad,
                                  const HessianStrategy& strategy);

/// Residual of the naturality identity g(p o A) = A' g(p) A (max-abs entry).
/// The unit-ball-volume normalization makes the identity exact in exact
/// arithmetic; the residual measures quadrature and Hessian error.
double gl_equivariance_residual(const Norm& norm, const Matrix& a,
                                const SphereQuadrature& quad,
                                const HessianStrategy& strategy);

}  // namespace finsler
