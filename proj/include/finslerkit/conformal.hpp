#pragma once

#include <cstdint>
#include <vector>

#include "finslerkit/averaged_metric.hpp"
#include "finslerkit/finsler_field.hpp"
#include "finslerkit/vector_field.hpp"

namespace finsler {

/// Probe parameters for the infinitesimal conformal factor: the log-derivative
/// of F along the flow is taken by a central difference at +-tau, each flow
/// leg integrated with `ode_steps` RK4 steps.
struct ConformalProbe {
  double tau = 1e-4;
  int ode_steps = 4;
};

/// alpha(x, xi) = d/dt|_0 log F(phi^t(x), d(phi^t)_x xi). Constant over xi at
/// each x exactly when the flow is conformal; zero for isometric flows.
double conformal_factor(const FinslerField& field, const VectorField& v,
                        const Vector& x, const Vector& xi,
                        const ConformalProbe& probe = {});

enum class ConformalVerdict { NotConformal, Conformal, Homothetic, Killing };

const char* to_string(ConformalVerdict v);

struct AlphaStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct ConformalReport {
  ConformalVerdict verdict = ConformalVerdict::NotConformal;
  /// max over sample points of the direction spread of alpha.
  double residual = 0.0;
  /// Fitted constant (mean alpha); meaningful for Homothetic/Killing.
  double homothety_constant = 0.0;
  std::vector<Vector> points;
  std::vector<double> point_factors;  // direction-averaged alpha per point
  AlphaStats stats;                   // over all (point, direction) samples
  double tolerance = 0.0;
};

/// Samples alpha on seeded chart points and F-unit directions (both signs,
/// so non-reversible norms are probed separately on +-xi) and applies the
/// verdict cascade: direction spread beyond tol at any point -> NotConformal;
/// else all |alpha| < tol -> Killing; else alpha constant across points ->
/// Homothetic; else Conformal.
ConformalReport classify_field(const FinslerField& field, const VectorField& v,
                               int n_points, int n_directions, std::uint64_t seed,
                               double tol = 1e-4, const ConformalProbe& probe = {});

struct TransferReport {
  ConformalVerdict finsler_verdict;
  ConformalVerdict riemann_verdict;
  /// max over samples of |alpha_g - 2 alpha_F|, where alpha_g is the
  /// log-derivative of g itself (so it doubles the norm-level factor).
  double max_factor_mismatch;
};

/// Checks that a conformal field for F is conformal for the averaged metric
/// g(F) with doubled factor at log level, and that Killing/Homothetic
/// verdicts transfer. Requires classify_field(F, v) to be conformal.
TransferReport transfer_consistency(const FinslerField& field, const VectorField& v,
                                    const SphereQuadrature& quad,
                                    const HessianStrategy& strategy, int n_points,
                                    int n_directions, std::uint64_t seed,
                                    double tol = 1e-4, const ConformalProbe& probe = {});

struct HomothetyOrbit {
  double max_value_drift;   // max_k |F(h^k(x, xi)) - F(x, xi)|
  double final_point_norm;  // |x_k| after the last iteration
};

/// Iterates the tangent map h(x, xi) = (mu A x, A xi) associated with the
/// homothety x -> mu A x. When A is a linear isometry of the norm, F-values
/// along the orbit are constant while the base point contracts to the
/// origin; this is the finite-depth version of the translation-invariance
/// limit argument.
HomothetyOrbit homothety_orbit_drift(const Norm& norm, const Matrix& a, double mu,
                                     const Vector& x0, const Vector& xi0,
                                     int iterations);

}  // namespace finsler
