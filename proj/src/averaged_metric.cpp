#include "finslerkit/averaged_metric.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "finslerkit/errors.hpp"
#include "finslerkit/parallel.hpp"

namespace finsler {

SymBilinearForm averaged_form(const Norm& norm, const SphereQuadrature& quad,
                              const HessianStrategy& strategy) {
  if (norm.dim() != quad.dim)
    throw InvalidSpecError("averaged_form: norm and quadrature dimensions differ");
  const int n = quad.dim;
  // One pass over the nodes: the radial factor r^n serves both the volume
  // normalization and the pullback density, and each node's Hessian feeds
  // all n(n+1)/2 entries.
  double volume_acc = 0.0;
  Matrix g_acc = Matrix::Zero(n, n);
  for (long k = 0; k < quad.nodes.rows(); ++k) {
    Vector u = quad.nodes.row(k).transpose();
    double p = norm(u);
    if (!std::isfinite(p) || p <= 0.0)
      throw InvalidSpecError("averaged_form: norm not positive on the sphere");
    double r = 1.0 / p;
    double rn = std::pow(r, n);
    volume_acc += quad.weights[k] * rn;
    g_acc += (quad.weights[k] * rn) * hessian_p2(norm, r * u, strategy);
  }
  SymBilinearForm g(symmetrized(g_acc * (n / volume_acc)));
  if (g.definiteness() != Definiteness::PositiveDefinite) {
    std::ostringstream msg;
    msg << "averaged form is not positive definite (min eigenvalue "
        << g.min_eigenvalue() << ", witness direction [";
    for (int i = 0; i < n; ++i) msg << (i ? ", " : "") << g.min_eigenvector()[i];
    msg << "]); quadrature too coarse or invalid norm";
    throw DefinitenessError(msg.str(), g.min_eigenvalue());
  }
  return g;
}

namespace {

std::vector<Vector> uniform_grid(const Box& box, int points_per_axis,
                                 std::vector<int>& shape) {
  const int n = box.dim();
  shape.assign(n, points_per_axis);
  long total = 1;
  for (int i = 0; i < n; ++i) total *= points_per_axis;
  std::vector<Vector> points;
  points.reserve(total);
  for (long idx = 0; idx < total; ++idx) {
    Vector x(n);
    long rest = idx;
    for (int axis = n - 1; axis >= 0; --axis) {
      int i = static_cast<int>(rest % points_per_axis);
      rest /= points_per_axis;
      double t = points_per_axis == 1 ? 0.5 : double(i) / (points_per_axis - 1);
      x[axis] = box.lo[axis] + t * (box.hi[axis] - box.lo[axis]);
    }
    points.push_back(std::move(x));
  }
  return points;
}

}  // namespace

MetricField averaged_metric_field(const FinslerField& field, int points_per_axis,
                                  const SphereQuadrature& quad,
                                  const HessianStrategy& strategy) {
  if (points_per_axis < 2)
    throw InvalidSpecError("averaged_metric_field: need at least 2 points per axis");
  MetricField out;
  out.points = uniform_grid(field.chart(), points_per_axis, out.grid_shape);
  std::vector<std::optional<SymBilinearForm>> slots(out.points.size());
  parallel_for(static_cast<int>(out.points.size()), [&](int i) {
    try {
      slots[i] = averaged_form(field.norm_at(out.points[i]), quad, strategy);
    } catch (const NumericalError& err) {
      std::ostringstream msg;
      msg << err.what() << " at grid point [";
      for (int j = 0; j < out.points[i].size(); ++j)
        msg << (j ? ", " : "") << out.points[i][j];
      msg << "]";
      throw NumericalError(msg.str());
    }
  });
  out.forms.reserve(slots.size());
  for (auto& s : slots) out.forms.push_back(std::move(*s));
  return out;
}

double gl_equivariance_residual(const Norm& norm, const Matrix& a,
                                const SphereQuadrature& quad,
                                const HessianStrategy& strategy) {
  SymBilinearForm pulled = averaged_form(Norm::pullback(norm, a), quad, strategy);
  SymBilinearForm plain = averaged_form(norm, quad, strategy);
  Matrix expected = a.transpose() * plain.matrix() * a;
  return (pulled.matrix() - expected).cwiseAbs().maxCoeff();
}

}  // namespace finsler
