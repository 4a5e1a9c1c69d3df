#include "finslerkit/liouville.hpp"

#include <cmath>

#include "finslerkit/errors.hpp"
#include "finslerkit/sphere.hpp"

namespace finsler {

Matrix DifferentiableMap::jacobian_at(const Vector& x) const {
  if (jacobian) return jacobian(x);
  const double h = 1e-6 * (1.0 + x.norm());
  Matrix j(dim, dim);
  Vector probe = x;
  for (int k = 0; k < dim; ++k) {
    probe[k] = x[k] + h;
    Vector fp = apply(probe);
    probe[k] = x[k] - h;
    Vector fm = apply(probe);
    probe[k] = x[k];
    j.col(k) = (fp - fm) / (2.0 * h);
  }
  return j;
}

DifferentiableMap inversion_map(int dim) {
  return DifferentiableMap{
      dim, [](const Vector& z) { return invert_point(z); },
      [](const Vector& z) { return inversion_jacobian(z); }};
}

DifferentiableMap similarity_map(double mu, const Matrix& a, const Vector& b) {
  if (!(mu > 0.0)) throw InvalidSpecError("similarity: mu must be positive");
  int dim = static_cast<int>(b.size());
  if (a.rows() != dim || a.cols() != dim)
    throw InvalidSpecError("similarity: dimension mismatch");
  if ((a.transpose() * a - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidSpecError("similarity: matrix must be orthogonal");
  return DifferentiableMap{
      dim, [mu, a, b](const Vector& x) { return Vector(mu * (a * x) + b); },
      [mu, a](const Vector&) { return Matrix(mu * a); }};
}

DifferentiableMap mobius_plane_map(const Matrix& a, const Vector& b) {
  MobiusMap map(a, b);
  return DifferentiableMap{
      map.dim(), [map](const Vector& q) { return map.apply(q); },
      [map](const Vector& q) { return map.jacobian(q); }};
}

SimilarityFit fit_similarity(const std::vector<Vector>& xs,
                             const std::vector<Vector>& ys) {
  if (xs.size() != ys.size()) throw InvalidSpecError("fit_similarity: sample size mismatch");
  if (xs.empty()) throw InvalidSpecError("fit_similarity: no samples");
  const int n = static_cast<int>(xs[0].size());
  const int m = static_cast<int>(xs.size());
  if (m < n + 2)
    throw InvalidSpecError("fit_similarity: need at least n + 2 sample points");

  Vector x_mean = Vector::Zero(n), y_mean = Vector::Zero(n);
  for (int i = 0; i < m; ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= m;
  y_mean /= m;

  Matrix cross = Matrix::Zero(n, n);
  double x_scatter = 0.0;
  for (int i = 0; i < m; ++i) {
    Vector xc = xs[i] - x_mean, yc = ys[i] - y_mean;
    cross += yc * xc.transpose();
    x_scatter += xc.squaredNorm();
  }
  if (x_scatter < 1e-20)
    throw InvalidSpecError("fit_similarity: degenerate sample configuration");

  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()[n - 1] < 1e-12 * std::max(1.0, svd.singularValues()[0]))
    throw InvalidSpecError("fit_similarity: degenerate sample configuration");

  SimilarityFit fit;
  fit.rotation = svd.matrixU() * svd.matrixV().transpose();
  fit.mu = svd.singularValues().sum() / x_scatter;
  fit.translation = y_mean - fit.mu * (fit.rotation * x_mean);
  fit.residual = 0.0;
  for (int i = 0; i < m; ++i) {
    double miss = (fit.mu * (fit.rotation * xs[i]) + fit.translation - ys[i]).norm();
    fit.residual = std::max(fit.residual, miss);
  }
  return fit;
}

double directional_stretch_spread(const Norm& norm, const DifferentiableMap& map,
                                  const Vector& x, int n_directions,
                                  std::uint64_t seed) {
  if (n_directions < 2) throw InvalidSpecError("stretch spread: need >= 2 directions");
  Matrix j = map.jacobian_at(x);
  if (!all_finite(j)) throw NumericalError("stretch spread: singular or non-finite differential");
  Rng rng(seed);
  const int n = norm.dim();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int d = 0; d < n_directions; ++d) {
    Vector u = rng.gaussian_vector(n);
    if (u.norm() < 1e-12) { --d; continue; }
    for (double sign : {1.0, -1.0}) {
      Vector xi = sign * u / norm(sign * u);
      double stretch = norm(j * xi);
      lo = std::min(lo, stretch);
      hi = std::max(hi, stretch);
    }
  }
  return hi - lo;
}

}  // namespace finsler
