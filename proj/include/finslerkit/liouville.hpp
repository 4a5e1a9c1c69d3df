#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "finslerkit/linalg.hpp"
#include "finslerkit/norm.hpp"

namespace finsler {

/// A differentiable map of R^n with an optional analytic Jacobian (central
/// differences otherwise).
struct DifferentiableMap {
  int dim = 0;
  std::function<Vector(const Vector&)> apply;
  std::function<Matrix(const Vector&)> jacobian;

  Matrix jacobian_at(const Vector& x) const;
};

DifferentiableMap inversion_map(int dim);
DifferentiableMap similarity_map(double mu, const Matrix& a, const Vector& b);
/// The Moebius map fbar_{A,b} acting on R^n.
DifferentiableMap mobius_plane_map(const Matrix& a, const Vector& b);

/// Least-squares similarity x -> mu A x + b (Procrustes with scaling;
/// reflections allowed since they are conformal). residual is the maximum
/// euclidean misfit over the samples; it is reported, never hidden.
struct SimilarityFit {
  double mu = 0.0;
  Matrix rotation;
  Vector translation;
  double residual = 0.0;
};

SimilarityFit fit_similarity(const std::vector<Vector>& xs,
                             const std::vector<Vector>& ys);

/// Conformality of a map at x, measured through a norm: the spread
/// (max - min) of norm(dmap_x(xi)) over norm-unit directions xi. Zero spread
/// at every point is the differential form of conformality; for the
/// inversion this separates euclidean norms (spread ~ 0) from genuinely
/// Minkowski ones (spread bounded away from 0).
double directional_stretch_spread(const Norm& norm, const DifferentiableMap& map,
                                  const Vector& x, int n_directions,
                                  std::uint64_t seed);

}  // namespace finsler
