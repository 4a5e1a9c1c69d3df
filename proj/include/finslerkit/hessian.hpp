#pragma once

#include "finslerkit/linalg.hpp"
#include "finslerkit/norm.hpp"

namespace finsler {

enum class HessianMode { Analytic, FiniteDifference };

/// How to obtain the second differential of p^2. Finite differences are
/// central, applied to p^2 directly (smoother than p near small values),
/// with step h = rel_step * |xi|. rel_step must lie in [1e-7, 1e-3].
class HessianStrategy {
 public:
  static HessianStrategy analytic();
  static HessianStrategy finite_difference(double rel_step = 1e-5);

  HessianMode mode() const { return mode_; }
  double rel_step() const { return rel_step_; }

 private:
  HessianStrategy(HessianMode mode, double rel_step)
      : mode_(mode), rel_step_(rel_step) {}
  HessianMode mode_;
  double rel_step_;
};

/// Analytic when the family provides one, finite differences otherwise.
HessianStrategy preferred_strategy(const Norm& norm);

/// The symmetric bilinear form b_(xi) = D^2 p^2 at xi != 0. By Euler's
/// identity for the degree-2 homogeneous p^2, b_(xi)(xi, xi) = 2 p^2(xi).
/// Convexity makes it positive semidefinite; rank deficiency is legitimate
/// (e.g. quartic norms on the axes) and is not repaired here.
Matrix hessian_p2(const Norm& norm, const Vector& xi, const HessianStrategy& strategy);

}  // namespace finsler
