#include "finslerkit/hessian.hpp"

#include <cmath>

#include "finslerkit/errors.hpp"

namespace finsler {

HessianStrategy HessianStrategy::analytic() {
  return HessianStrategy(HessianMode::Analytic, 0.0);
}

HessianStrategy HessianStrategy::finite_difference(double rel_step) {
  if (!(rel_step >= 1e-7 && rel_step <= 1e-3))
    throw InvalidSpecError("finite-difference step must lie in [1e-7, 1e-3]");
  return HessianStrategy(HessianMode::FiniteDifference, rel_step);
}

HessianStrategy preferred_strategy(const Norm& norm) {
  return norm.has_analytic_hessian() ? HessianStrategy::analytic()
                                     : HessianStrategy::finite_difference();
}

namespace {

Matrix fd_hessian_sq(const Norm& norm, const Vector& xi, double rel_step) {
  const int n = norm.dim();
  const double h = rel_step * xi.norm();
  Matrix hess(n, n);
  const double f0 = norm.squared(xi);
  Vector probe = xi;
  for (int i = 0; i < n; ++i) {
    probe[i] = xi[i] + h;
    double fp = norm.squared(probe);
    probe[i] = xi[i] - h;
    double fm = norm.squared(probe);
    probe[i] = xi[i];
    hess(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
    for (int j = i + 1; j < n; ++j) {
      probe[i] = xi[i] + h;
      probe[j] = xi[j] + h;
      double fpp = norm.squared(probe);
      probe[j] = xi[j] - h;
      double fpm = norm.squared(probe);
      probe[i] = xi[i] - h;
      double fmm = norm.squared(probe);
      probe[j] = xi[j] + h;
      double fmp = norm.squared(probe);
      probe[i] = xi[i];
      probe[j] = xi[j];
      hess(i, j) = hess(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    }
  }
  return hess;
}

}  // namespace

Matrix hessian_p2(const Norm& norm, const Vector& xi, const HessianStrategy& strategy) {
  if (xi.size() != norm.dim())
    throw InvalidSpecError("hessian_p2: vector dimension mismatch");
  if (xi.norm() == 0.0)
    throw InvalidSpecError("hessian_p2: p^2 is not twice differentiable at the origin");
  Matrix h = strategy.mode() == HessianMode::Analytic
                 ? norm.analytic_hessian_sq(xi)
                 : fd_hessian_sq(norm, xi, strategy.rel_step());
  if (!all_finite(h))
    throw NumericalError("hessian_p2: non-finite entries (evaluation near a smoothness defect?)");
  return symmetrized(h);
}

}  // namespace finsler
