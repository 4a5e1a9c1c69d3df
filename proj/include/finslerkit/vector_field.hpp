#pragma once

#include <functional>
#include <string>

#include "finslerkit/finsler_field.hpp"
#include "finslerkit/linalg.hpp"

namespace finsler {

/// A smooth vector field on (a chart of) R^n. The catalog entries carry
/// analytic Jacobians; custom fields fall back to central differences.
class VectorField {
 public:
  using Evaluator = std::function<Vector(const Vector&)>;
  using JacobianFn = std::function<Matrix(const Vector&)>;

  static VectorField radial(int dim);                       // v(x) = x
  static VectorField rotation(int dim, int i, int j);       // plane rotation generator
  static VectorField translation(const Vector& b);          // v(x) = b
  static VectorField linear(const Matrix& m);               // v(x) = m x
  /// Generator of the Moebius flow on R^n: v(x) = s x + c|x|^2 - 2<c,x> x
  /// with skew s. Conformal for the euclidean metric, not homothetic.
  static VectorField mobius_generator(const Matrix& skew, const Vector& c);
  static VectorField custom(int dim, Evaluator v, JacobianFn jacobian = nullptr,
                            std::string tag = "custom");

  int dim() const { return dim_; }
  Vector operator()(const Vector& x) const { return eval_(x); }
  Matrix jacobian(const Vector& x) const;
  const std::string& tag() const { return tag_; }

 private:
  VectorField(int dim, Evaluator eval, JacobianFn jac, std::string tag)
      : dim_(dim), eval_(std::move(eval)), jacobian_(std::move(jac)), tag_(std::move(tag)) {}
  static VectorField linear_tagged(const Matrix& m, std::string tag);
  int dim_;
  Evaluator eval_;
  JacobianFn jacobian_;
  std::string tag_;
};

struct FlowState {
  Vector point;         // phi^t(x)
  Vector frame_vector;  // d(phi^t)_x(xi)
};

/// Integrates dx/dt = v(x) together with the variational equation
/// dxi/dt = Dv(x) xi by the classical 4th-order one-step method with a fixed
/// step count. Throws FlowEscapeError on non-finite values or when `domain`
/// is given and the trajectory leaves it.
FlowState flow_step(const VectorField& v, const Vector& x, const Vector& xi,
                    double t, int steps, const Box* domain = nullptr);

/// Trajectory-only variant.
Vector flow_point(const VectorField& v, const Vector& x, double t, int steps,
                  const Box* domain = nullptr);

}  // namespace finsler
