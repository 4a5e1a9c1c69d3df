#include "finslerkit/sphere.hpp"

#include <cmath>

#include "finslerkit/averaged_metric.hpp"
#include "finslerkit/errors.hpp"

namespace finsler {

StereographicChart::StereographicChart(int sphere_dim, Pole pole)
    : n_(sphere_dim), pole_sign_(pole == Pole::North ? 1.0 : -1.0) {
  if (sphere_dim < 1) throw InvalidSpecError("stereographic chart: sphere dimension >= 1");
}

Vector StereographicChart::pole() const {
  Vector p = Vector::Zero(n_ + 1);
  p[n_] = pole_sign_;
  return p;
}

double StereographicChart::factor(const Vector& q) const {
  double denom = 1.0 - pole_sign_ * q[n_];
  if (denom < 1e-10)
    throw InvalidSpecError("stereographic projection undefined at the pole");
  return 1.0 / denom;
}

Vector StereographicChart::project(const Vector& q) const {
  if (q.size() != n_ + 1)
    throw InvalidSpecError("stereographic projection: wrong ambient dimension");
  return factor(q) * q.head(n_);
}

Vector StereographicChart::unproject(const Vector& z) const {
  if (z.size() != n_) throw InvalidSpecError("stereographic chart: wrong chart dimension");
  double zz = z.squaredNorm();
  Vector q(n_ + 1);
  q.head(n_) = 2.0 * z;
  q[n_] = pole_sign_ * (zz - 1.0);
  return q / (zz + 1.0);
}

Vector StereographicChart::push_tangent(const Vector& q, const Vector& xi) const {
  double sigma = factor(q);
  // ds(xi) = sigma * xi_plane + sigma^2 <xi, P> q_plane
  Vector out = sigma * xi.head(n_);
  out += sigma * sigma * (pole_sign_ * xi[n_]) * q.head(n_);
  return out;
}

Vector StereographicChart::pull_tangent(const Vector& z, const Vector& w) const {
  double zz = z.squaredNorm();
  double zw = z.dot(w);
  // Differential of unproject at z.
  Vector q(n_ + 1);
  q.head(n_) = 2.0 * z;
  q[n_] = pole_sign_ * (zz - 1.0);
  Vector dq(n_ + 1);
  dq.head(n_) = 2.0 * w;
  dq[n_] = pole_sign_ * 2.0 * zw;
  return dq / (zz + 1.0) - q * (2.0 * zw / ((zz + 1.0) * (zz + 1.0)));
}

Vector invert_point(const Vector& z) {
  double zz = z.squaredNorm();
  if (zz < 1e-24) throw InvalidSpecError("inversion undefined at the origin");
  return z / zz;
}

Matrix inversion_jacobian(const Vector& z) {
  double zz = z.squaredNorm();
  if (zz < 1e-24) throw InvalidSpecError("inversion undefined at the origin");
  int n = static_cast<int>(z.size());
  return (Matrix::Identity(n, n) * zz - 2.0 * z * z.transpose()) / (zz * zz);
}

MobiusMap::MobiusMap(const Matrix& a, const Vector& b) : a_(a), b_(b) {
  int n = static_cast<int>(b.size());
  if (a.rows() != n || a.cols() != n)
    throw InvalidSpecError("moebius map: dimension mismatch");
  if ((a.transpose() * a - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidSpecError("moebius map: matrix must be orthogonal");
  if (b.norm() < 1e-14) throw InvalidSpecError("moebius map: b must be nonzero");
  if ((a * b - b).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidSpecError("moebius map: A must fix b");
}

double MobiusMap::denominator(const Vector& q) const {
  return 1.0 + 2.0 * (a_ * q).dot(b_) + b_.squaredNorm() * q.squaredNorm();
}

Vector MobiusMap::apply(const Vector& q) const {
  double den = denominator(q);
  if (std::abs(den) < 1e-14) throw NumericalError("moebius map: vanishing denominator");
  return (a_ * q + q.squaredNorm() * b_) / den;
}

double MobiusMap::factor(const Vector& q) const {
  double den = denominator(q);
  if (std::abs(den) < 1e-14) throw NumericalError("moebius map: vanishing denominator");
  return 1.0 / den;
}

Matrix MobiusMap::jacobian(const Vector& q) const {
  double den = denominator(q);
  if (std::abs(den) < 1e-14) throw NumericalError("moebius map: vanishing denominator");
  Vector num = a_ * q + q.squaredNorm() * b_;
  Matrix dnum = a_ + 2.0 * b_ * q.transpose();
  Vector dden = 2.0 * a_.transpose() * b_ + 2.0 * b_.squaredNorm() * q;
  return dnum / den - num * dden.transpose() / (den * den);
}

VectorField v1_field(const StereographicChart& chart, const Vector& b) {
  if (b.size() != chart.sphere_dim())
    throw InvalidSpecError("v1 field: b must live in the chart R^n");
  if (b.norm() == 0.0) throw InvalidSpecError("v1 field: b must be nonzero");
  int ambient = chart.sphere_dim() + 1;
  Vector pole = chart.pole();
  // The zero cutoff matches the chart guard so the evaluator never projects
  // inside the pole's exclusion zone; |v1| there is below |b| * 1e-9 anyway.
  auto eval = [chart, b, pole](const Vector& q) -> Vector {
    if (1.0 - q.dot(pole) < 1e-9) return Vector::Zero(q.size());
    return chart.pull_tangent(chart.project(q), b);
  };
  return VectorField::custom(ambient, eval, nullptr, "v1");
}

Vector v1_flow(const StereographicChart& chart, const Vector& b, const Vector& q,
               double t) {
  if (1.0 - q.dot(chart.pole()) < 1e-9) return chart.pole();
  return chart.unproject(chart.project(q) + t * b);
}

Matrix tangent_basis(const Vector& q) {
  int ambient = static_cast<int>(q.size());
  Vector unit = q / q.norm();
  double sign = unit[ambient - 1] >= 0.0 ? 1.0 : -1.0;
  Vector w = unit;
  w[ambient - 1] += sign;
  Matrix house = Matrix::Identity(ambient, ambient) -
                 (2.0 / w.squaredNorm()) * w * w.transpose();
  // house * e_last = -sign * unit, so the remaining columns span q^perp.
  return house.leftCols(ambient - 1);
}

SphereFinsler SphereFinsler::round(int sphere_dim, double c) {
  if (sphere_dim < 1) throw InvalidSpecError("sphere finsler: dimension >= 1");
  if (!(c > 0.0)) throw InvalidSpecError("sphere finsler: scale must be positive");
  SphereFinsler f;
  f.n_ = sphere_dim;
  f.value_ = [c](const Vector& q, const Vector& xi) {
    // Tangential component only, so slightly off-sphere queries stay sane.
    Vector unit = q / q.norm();
    Vector tang = xi - xi.dot(unit) * unit;
    return c * tang.norm();
  };
  f.tangent_norm_ = [c](const Vector&, const Matrix& basis) {
    int n = static_cast<int>(basis.cols());
    return Norm::euclidean(c * c * Matrix::Identity(n, n));
  };
  return f;
}

SphereFinsler SphereFinsler::pushforward(const StereographicChart& chart, const Norm& p) {
  if (p.dim() != chart.sphere_dim())
    throw InvalidSpecError("sphere finsler: norm must live in the chart R^n");
  SphereFinsler f;
  f.n_ = chart.sphere_dim();
  f.value_ = [chart, p](const Vector& q, const Vector& xi) {
    return p(chart.push_tangent(q, xi)) / chart.factor(q);
  };
  f.tangent_norm_ = [chart, p](const Vector& q, const Matrix& basis) {
    int n = static_cast<int>(basis.cols());
    Matrix push(n, n);
    for (int j = 0; j < n; ++j) push.col(j) = chart.push_tangent(q, basis.col(j));
    return Norm::scaled(Norm::pullback(p, push), 1.0 / chart.factor(q));
  };
  return f;
}

Norm SphereFinsler::tangent_norm(const Vector& q, const Matrix& basis) const {
  return tangent_norm_(q, basis);
}

SphereMetric round_metric() {
  return [](const Vector& q, const Vector& xi) {
    Vector unit = q / q.norm();
    Vector tang = xi - xi.dot(unit) * unit;
    return tang.squaredNorm();
  };
}

SphereMetric averaged_sphere_metric(const SphereFinsler& finsler,
                                    const SphereQuadrature& quad,
                                    const HessianStrategy& strategy) {
  int n = finsler.sphere_dim();
  if (quad.dim != n)
    throw InvalidSpecError("averaged sphere metric: quadrature must match tangent dimension");
  return [finsler, quad, strategy, n](const Vector& q, const Vector& xi) {
    Matrix basis = tangent_basis(q);
    SymBilinearForm g = averaged_form(finsler.tangent_norm(q, basis), quad, strategy);
    Vector y = basis.transpose() * xi;
    return y.dot(g.matrix() * y) / (2.0 * n);
  };
}

double m_function(const SphereFinsler& finsler, const SphereMetric& g,
                  const StereographicChart& chart, const Vector& b, const Vector& q) {
  Vector v1 = v1_field(chart, b)(q);
  double denom = g(q, v1);
  if (!(denom > 1e-20))
    throw InvalidSpecError("m is undefined at a zero of v1");
  double f = finsler(q, v1);
  return f * f / denom;
}

double big_m_function(const SphereFinsler& finsler, const SphereMetric& g,
                      const Vector& q, int n_directions, std::uint64_t seed) {
  if (n_directions < 32)
    throw InvalidSpecError("M needs at least 32 sampled directions");
  Rng rng(seed);
  Vector unit = q / q.norm();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int d = 0; d < n_directions; ++d) {
    Vector xi = rng.gaussian_vector(static_cast<int>(q.size()));
    xi -= xi.dot(unit) * unit;
    double len = xi.norm();
    if (len < 1e-12) { --d; continue; }
    xi /= len;
    double f = finsler(q, xi);
    double ratio = f * f / g(q, xi);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return hi - lo;
}

HaProbe ha_isometry_probe(const Norm& minkowski, const MobiusMap& fbar,
                          const Vector& z0, const Vector& xi0, int depth) {
  if (depth < 1) throw InvalidSpecError("ha probe: depth must be >= 1");
  const Matrix& a = fbar.rotation();
  HaProbe probe;
  probe.direct_ratio = minkowski(a * xi0) / minkowski(xi0);
  Vector z = z0, xi = xi0;
  Vector za = a * z0, xia = a * xi0;
  probe.drift = 0.0;
  probe.limit_ratio = probe.direct_ratio;
  for (int k = 0; k < depth; ++k) {
    xi = fbar.jacobian(z) * xi;
    z = fbar.apply(z);
    xia = fbar.jacobian(za) * xia;
    za = fbar.apply(za);
    double ratio = minkowski(xia) / minkowski(xi);
    probe.limit_ratio = ratio;
    probe.drift = std::max(probe.drift, std::abs(ratio - probe.direct_ratio));
  }
  return probe;
}

}  // namespace finsler
