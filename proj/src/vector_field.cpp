#include "finslerkit/vector_field.hpp"

#include <cmath>

#include "finslerkit/errors.hpp"

namespace finsler {

VectorField VectorField::radial(int dim) {
  return VectorField(
      dim, [](const Vector& x) { return x; },
      [dim](const Vector&) { return Matrix::Identity(dim, dim); }, "radial");
}

VectorField VectorField::rotation(int dim, int i, int j) {
  if (i < 0 || j < 0 || i >= dim || j >= dim || i == j)
    throw InvalidSpecError("rotation field: bad coordinate plane");
  Matrix gen = Matrix::Zero(dim, dim);
  gen(i, j) = -1.0;
  gen(j, i) = 1.0;
  return linear_tagged(gen, "rotation");
}

VectorField VectorField::translation(const Vector& b) {
  int dim = static_cast<int>(b.size());
  return VectorField(
      dim, [b](const Vector&) { return b; },
      [dim](const Vector&) { return Matrix::Zero(dim, dim); }, "translation");
}

VectorField VectorField::linear(const Matrix& m) { return linear_tagged(m, "linear"); }

VectorField VectorField::linear_tagged(const Matrix& m, std::string tag) {
  if (m.rows() != m.cols()) throw InvalidSpecError("linear field: matrix not square");
  int dim = static_cast<int>(m.rows());
  return VectorField(
      dim, [m](const Vector& x) { return m * x; },
      [m](const Vector&) { return m; }, std::move(tag));
}

VectorField VectorField::mobius_generator(const Matrix& skew, const Vector& c) {
  int dim = static_cast<int>(c.size());
  if (skew.rows() != dim || skew.cols() != dim)
    throw InvalidSpecError("mobius generator: dimension mismatch");
  if ((skew + skew.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidSpecError("mobius generator: matrix must be skew-symmetric");
  return VectorField(
      dim,
      [skew, c](const Vector& x) {
        return Vector(skew * x + x.squaredNorm() * c - 2.0 * c.dot(x) * x);
      },
      [skew, c, dim](const Vector& x) {
        return Matrix(skew + 2.0 * c * x.transpose() - 2.0 * x * c.transpose() -
                      2.0 * c.dot(x) * Matrix::Identity(dim, dim));
      },
      "mobius-generator");
}

VectorField VectorField::custom(int dim, Evaluator v, JacobianFn jacobian,
                                std::string tag) {
  if (!v) throw InvalidSpecError("custom field requires an evaluator");
  return VectorField(dim, std::move(v), std::move(jacobian), std::move(tag));
}

Matrix VectorField::jacobian(const Vector& x) const {
  if (jacobian_) return jacobian_(x);
  // Central differences on the evaluator.
  const double h = 1e-6 * (1.0 + x.norm());
  Matrix j(dim_, dim_);
  Vector probe = x;
  for (int k = 0; k < dim_; ++k) {
    probe[k] = x[k] + h;
    Vector fp = eval_(probe);
    probe[k] = x[k] - h;
    Vector fm = eval_(probe);
    probe[k] = x[k];
    j.col(k) = (fp - fm) / (2.0 * h);
  }
  return j;
}

namespace {

void check_state(const Vector& x, const Box* domain) {
  if (!all_finite(x)) throw FlowEscapeError("flow produced non-finite values");
  if (domain && !domain->contains(x))
    throw FlowEscapeError("flow trajectory left the chart");
}

}  // namespace

FlowState flow_step(const VectorField& v, const Vector& x0, const Vector& xi0,
                    double t, int steps, const Box* domain) {
  if (steps < 1) throw InvalidSpecError("flow_step: steps must be >= 1");
  if (x0.size() != v.dim() || xi0.size() != v.dim())
    throw InvalidSpecError("flow_step: dimension mismatch");
  const double h = t / steps;
  Vector x = x0, xi = xi0;
  auto fx = [&](const Vector& p) { return v(p); };
  auto fxi = [&](const Vector& p, const Vector& w) { return Vector(v.jacobian(p) * w); };
  for (int s = 0; s < steps; ++s) {
    Vector k1x = fx(x);
    Vector k1v = fxi(x, xi);
    Vector k2x = fx(x + 0.5 * h * k1x);
    Vector k2v = fxi(x + 0.5 * h * k1x, xi + 0.5 * h * k1v);
    Vector k3x = fx(x + 0.5 * h * k2x);
    Vector k3v = fxi(x + 0.5 * h * k2x, xi + 0.5 * h * k2v);
    Vector k4x = fx(x + h * k3x);
    Vector k4v = fxi(x + h * k3x, xi + h * k3v);
    x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    xi += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    check_state(x, domain);
    if (!all_finite(xi)) throw FlowEscapeError("flow frame vector became non-finite");
  }
  return FlowState{std::move(x), std::move(xi)};
}

Vector flow_point(const VectorField& v, const Vector& x0, double t, int steps,
                  const Box* domain) {
  if (steps < 1) throw InvalidSpecError("flow_point: steps must be >= 1");
  const double h = t / steps;
  Vector x = x0;
  for (int s = 0; s < steps; ++s) {
    Vector k1 = v(x);
    Vector k2 = v(x + 0.5 * h * k1);
    Vector k3 = v(x + 0.5 * h * k2);
    Vector k4 = v(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    check_state(x, domain);
  }
  return x;
}

}  // namespace finsler
