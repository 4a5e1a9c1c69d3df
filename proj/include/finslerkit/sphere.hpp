#pragma once

#include <cstdint>
#include <functional>

#include "finslerkit/hessian.hpp"
#include "finslerkit/norm.hpp"
#include "finslerkit/quadrature.hpp"
#include "finslerkit/vector_field.hpp"

namespace finsler {

/// Stereographic projection of S^n (unit sphere in R^{n+1}) from a pole onto
/// the equatorial hyperplane, identified with R^n via the first n coordinate
/// axes. With pole P the map is
///     s(q) = (q - <q,P> P) / (1 - <q,P>),   sigma(q) = 1 / (1 - <q,P>),
/// and s is conformal: <ds(xi), ds(eta)> = sigma^2 <xi, eta> on tangents.
/// The north and south charts compose to the inversion:
/// s_south(s_north^{-1}(z)) = z / |z|^2.
class StereographicChart {
 public:
  enum class Pole { North, South };

  StereographicChart(int sphere_dim, Pole pole);

  int sphere_dim() const { return n_; }
  Vector pole() const;

  Vector project(const Vector& q) const;   // R^{n+1} -> R^n
  double factor(const Vector& q) const;    // sigma
  Vector unproject(const Vector& z) const; // R^n -> S^n

  /// ds_q(xi) for xi tangent at q.
  Vector push_tangent(const Vector& q, const Vector& xi) const;
  /// d(s^{-1})_z(w).
  Vector pull_tangent(const Vector& z, const Vector& w) const;

 private:
  int n_;
  double pole_sign_;  // +1 north (e_{n+1}), -1 south
};

/// Inversion at the unit sphere, z -> z / |z|^2. An involution; at |q| = 1
/// its differential is the reflection in the hyperplane normal to q.
Vector invert_point(const Vector& z);
Matrix inversion_jacobian(const Vector& z);  // (I |z|^2 - 2 z z') / |z|^4

/// The sphere Moebius map conjugate to z -> Az + b under inversion:
///     fbar(q) = (Aq + b |q|^2) / (1 + 2<Aq, b> + |b|^2 |q|^2)
/// for orthogonal A with Ab = b, b != 0. Its conformal factor is
/// psi(q) = 1 / (1 + 2<Aq, b> + |b|^2 |q|^2); psi(0) = 1 and dfbar_0 = A.
class MobiusMap {
 public:
  MobiusMap(const Matrix& a, const Vector& b);

  int dim() const { return static_cast<int>(b_.size()); }
  Vector apply(const Vector& q) const;
  double factor(const Vector& q) const;
  Matrix jacobian(const Vector& q) const;

  const Matrix& rotation() const { return a_; }
  const Vector& translation() const { return b_; }

 private:
  double denominator(const Vector& q) const;
  Matrix a_;
  Vector b_;
};

/// The conformal field v1 on S^n determined by ds(v1) = b in the chart:
/// the flow is the chart translation z -> z + t b, the only zero is the
/// pole, and every trajectory converges to the pole as t -> +-infinity.
VectorField v1_field(const StereographicChart& chart, const Vector& b);

/// Exact flow of v1 through the chart.
Vector v1_flow(const StereographicChart& chart, const Vector& b, const Vector& q,
               double t);

/// Deterministic orthonormal basis of the tangent space q^perp, as the
/// columns of an (n+1) x n matrix (Householder completion).
Matrix tangent_basis(const Vector& q);

/// A Finsler metric on the sphere: round multiples c * sqrt(g_1) and
/// stereographic pushforwards of Minkowski norms (for which
/// F(q, xi) = p(ds_q(xi)) / sigma(q), so the chart metric is the given p).
class SphereFinsler {
 public:
  static SphereFinsler round(int sphere_dim, double c);
  static SphereFinsler pushforward(const StereographicChart& chart, const Norm& p);

  int sphere_dim() const { return n_; }
  double operator()(const Vector& q, const Vector& xi) const { return value_(q, xi); }

  /// The restriction of F to T_q S^n expressed in an orthonormal basis of
  /// q^perp; a structured norm, so analytic Hessians survive.
  Norm tangent_norm(const Vector& q, const Matrix& basis) const;

 private:
  SphereFinsler() = default;
  int n_ = 0;
  std::function<double(const Vector&, const Vector&)> value_;
  std::function<Norm(const Vector&, const Matrix&)> tangent_norm_;
};

/// Quadratic-form field on sphere tangent spaces, evaluated as g_q(xi, xi).
using SphereMetric = std::function<double(const Vector&, const Vector&)>;

/// The round metric g_1 (restriction of the ambient euclidean form).
SphereMetric round_metric();

/// q -> averaged form of F|T_qS^n, normalized by the euclidean averaging
/// constant 2n so that F = sqrt(g_1) gives exactly g_1 back.
SphereMetric averaged_sphere_metric(const SphereFinsler& finsler,
                                    const SphereQuadrature& quad,
                                    const HessianStrategy& strategy);

/// m(q) = F^2(q, v1(q)) / g_q(v1(q), v1(q)). Flow-invariant whenever v1 is
/// conformal for both F and g.
double m_function(const SphereFinsler& finsler, const SphereMetric& g,
                  const StereographicChart& chart, const Vector& b, const Vector& q);

/// M(q) = max - min of F^2/g over sampled tangent directions (a sampled
/// under-approximation of the directional oscillation).
double big_m_function(const SphereFinsler& finsler, const SphereMetric& g,
                      const Vector& q, int n_directions, std::uint64_t seed);

struct HaProbe {
  double direct_ratio;  // F(A xi0) / F(xi0)
  double limit_ratio;   // normalized-limit ratio after `depth` iterations
  double drift;         // max_k |ratio_k - direct_ratio|
};

/// Probes whether z -> Az is an isometry of a Minkowski norm by the
/// normalized-limit argument: pushes (z, xi) and (Az, A xi) through iterates
/// of fbar and compares the F-ratio of the two frame vectors with its
/// initial value. Conformality of fbar for the norm keeps the ratio exactly
/// constant (euclidean case); otherwise it drifts (quartic case).
HaProbe ha_isometry_probe(const Norm& minkowski, const MobiusMap& fbar,
                          const Vector& z0, const Vector& xi0, int depth);

}  // namespace finsler
