#include "finslerkit/linalg.hpp"

#include <cmath>

namespace finsler {

double Rng::gaussian() {
  // Box-Muller; consumes exactly two draws per call.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vector Rng::gaussian_vector(int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = gaussian();
  return v;
}

Vector Rng::unit_vector(int n) {
  Vector v = gaussian_vector(n);
  double len = v.norm();
  while (len < 1e-12) {
    v = gaussian_vector(n);
    len = v.norm();
  }
  return v / len;
}

Matrix Rng::orthogonal(int n) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

Matrix Rng::rotation(int n) {
  Matrix q = orthogonal(n);
  if (q.determinant() < 0) q.col(n - 1) *= -1.0;
  return q;
}

Matrix Rng::spd(int n, double eig_lo, double eig_hi) {
  Matrix q = orthogonal(n);
  Vector eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = uniform(eig_lo, eig_hi);
  return symmetrized(q * eigs.asDiagonal() * q.transpose());
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

bool all_finite(const Vector& v) { return v.allFinite(); }
bool all_finite(const Matrix& m) { return m.allFinite(); }

Matrix plane_rotation(int n, int i, int j, double angle) {
  Matrix r = Matrix::Identity(n, n);
  double c = std::cos(angle), s = std::sin(angle);
  r(i, i) = c;
  r(j, j) = c;
  r(i, j) = -s;
  r(j, i) = s;
  return r;
}

}  // namespace finsler
