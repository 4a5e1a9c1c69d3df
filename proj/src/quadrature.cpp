#include "finslerkit/quadrature.hpp"

#include <cmath>

#include "finslerkit/errors.hpp"

namespace finsler {

namespace {

struct Rule1D {
  Vector nodes;
  Vector weights;
};

// Gauss rule for the Gegenbauer weight (1 - t^2)^a on [-1, 1], by the
// Golub-Welsch method: nodes are eigenvalues of the symmetric Jacobi matrix
// of the monic orthogonal recurrence, weights come from the first components
// of the eigenvectors. a = 0 is plain Gauss-Legendre.
Rule1D gauss_gegenbauer(int m, double a) {
  Matrix jacobi = Matrix::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    double num = 4.0 * k * (k + a) * (k + a) * (k + 2.0 * a);
    double two = 2.0 * k + 2.0 * a;
    double den = two * two * (two + 1.0) * (two - 1.0);
    jacobi(k - 1, k) = jacobi(k, k - 1) = std::sqrt(num / den);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(jacobi);
  // mu0 = int_{-1}^{1} (1-t^2)^a dt = 2^{2a+1} Gamma(a+1)^2 / Gamma(2a+2)
  double mu0 = std::exp((2.0 * a + 1.0) * std::log(2.0) +
                        2.0 * std::lgamma(a + 1.0) - std::lgamma(2.0 * a + 2.0));
  Rule1D rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double first = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * first * first;
  }
  return rule;
}

SphereQuadrature circle_rule(int resolution) {
  SphereQuadrature quad;
  quad.dim = 2;
  quad.nodes.resize(resolution, 2);
  quad.weights = Vector::Constant(resolution, 2.0 * M_PI / resolution);
  for (int k = 0; k < resolution; ++k) {
    double theta = 2.0 * M_PI * k / resolution;
    quad.nodes(k, 0) = std::cos(theta);
    quad.nodes(k, 1) = std::sin(theta);
  }
  quad.order = resolution - 1;
  return quad;
}

}  // namespace

SphereQuadrature build_sphere_quadrature(int dim, int resolution) {
  if (dim < 2) throw InvalidSpecError("sphere quadrature requires dimension >= 2");
  if (resolution < 8) throw InvalidSpecError("sphere quadrature requires resolution >= 8");
  if (dim == 2) return circle_rule(resolution);

  // S^{n-1} = { (t, sqrt(1-t^2) v) : t in [-1,1], v in S^{n-2} } with
  // surface measure (1-t^2)^{(n-3)/2} dt dsigma(v).
  SphereQuadrature sub = build_sphere_quadrature(dim - 1, resolution);
  Rule1D polar = gauss_gegenbauer(resolution, 0.5 * (dim - 3));

  SphereQuadrature quad;
  quad.dim = dim;
  long count = static_cast<long>(resolution) * sub.nodes.rows();
  quad.nodes.resize(count, dim);
  quad.weights.resize(count);
  long row = 0;
  for (int i = 0; i < resolution; ++i) {
    double t = polar.nodes[i];
    double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (long j = 0; j < sub.nodes.rows(); ++j, ++row) {
      quad.nodes(row, 0) = t;
      quad.nodes.row(row).tail(dim - 1) = s * sub.nodes.row(j);
      quad.nodes.row(row) /= quad.nodes.row(row).norm();
      quad.weights[row] = polar.weights[i] * sub.weights[j];
    }
  }
  quad.order = std::min(2 * resolution - 1, sub.order);
  return quad;
}

double euclidean_sphere_area(int dim) {
  return 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
}

int default_resolution(int dim) {
  // Chosen so that doubling the resolution moves catalog averages by less
  // than 1e-8 (the quartic norm is the slowest-converging entry).
  switch (dim) {
    case 2: return 256;
    case 3: return 64;
    case 4: return 32;
    case 5: return 20;
    default: return 14;
  }
}

namespace {

double radial_value(const Norm& norm, const Vector& u) {
  double p = norm(u);
  if (!std::isfinite(p) || p <= 0.0)
    throw InvalidSpecError("norm is not positive on the unit sphere; radial function undefined");
  return 1.0 / p;
}

}  // namespace

double unit_ball_volume(const Norm& norm, const SphereQuadrature& quad) {
  if (norm.dim() != quad.dim)
    throw InvalidSpecError("norm and quadrature dimensions differ");
  const int n = quad.dim;
  double acc = 0.0;
  for (long k = 0; k < quad.nodes.rows(); ++k) {
    double r = radial_value(norm, quad.nodes.row(k).transpose());
    acc += quad.weights[k] * std::pow(r, n);
  }
  return acc / n;
}

double indicatrix_integral(const Norm& norm,
                           const std::function<double(const Vector&)>& integrand,
                           const SphereQuadrature& quad) {
  if (norm.dim() != quad.dim)
    throw InvalidSpecError("norm and quadrature dimensions differ");
  const int n = quad.dim;
  double volume_acc = 0.0;  // sum w r^n = n V
  double f_acc = 0.0;
  for (long k = 0; k < quad.nodes.rows(); ++k) {
    Vector u = quad.nodes.row(k).transpose();
    double r = radial_value(norm, u);
    double rn = std::pow(r, n);
    double f = integrand(r * u);
    if (!std::isfinite(f)) throw NumericalError("integrand not finite on the indicatrix");
    volume_acc += quad.weights[k] * rn;
    f_acc += quad.weights[k] * rn * f;
  }
  return f_acc * n / volume_acc;
}

double radial_anisotropy(const Norm& norm, const SphereQuadrature& quad) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (long k = 0; k < quad.nodes.rows(); ++k) {
    double r = radial_value(norm, quad.nodes.row(k).transpose());
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi / lo;
}

}  // namespace finsler
