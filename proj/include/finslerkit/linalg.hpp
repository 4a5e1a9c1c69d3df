#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace finsler {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Deterministic random source. Distributions are hand-rolled on top of
/// mt19937_64 so a given seed produces the same stream regardless of the
/// standard library in use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gaussian();

  Vector gaussian_vector(int n);
  Vector unit_vector(int n);
  Matrix orthogonal(int n);
  Matrix rotation(int n);
  Matrix spd(int n, double eig_lo, double eig_hi);

 private:
  std::mt19937_64 engine_;
};

Matrix symmetrized(const Matrix& m);
bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

/// Rotation by `angle` in the (i, j) coordinate plane of an n x n identity.
Matrix plane_rotation(int n, int i, int j, double angle);

}  // namespace finsler
