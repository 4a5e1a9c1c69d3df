#pragma once

#include <functional>

#include "finslerkit/linalg.hpp"
#include "finslerkit/norm.hpp"

namespace finsler {

/// Axis-aligned box chart in R^n.
struct Box {
  Vector lo;
  Vector hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Vector& x) const;
  static Box centered(int dim, double half_width);
};

using ScalarField = std::function<double(const Vector&)>;

/// A Finsler metric on a box chart: a norm on each tangent space, smooth in
/// the base point. The common cases are a Minkowski field F(x, xi) = p(xi)
/// and a conformally Minkowski field F(x, xi) = lambda(x) p(xi) with
/// lambda > 0; a general per-point norm map is also accepted.
class FinslerField {
 public:
  static FinslerField minkowski(Box chart, Norm norm);
  static FinslerField conformal(Box chart, Norm base, ScalarField lambda);
  static FinslerField from_norm_map(Box chart, std::function<Norm(const Vector&)> norms);

  const Box& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }

  Norm norm_at(const Vector& x) const;
  double value(const Vector& x, const Vector& xi) const { return norm_at(x)(xi); }

  /// Conformal structure is exposed for cross-checks (the lambda^2 scaling
  /// oracle); the production path always goes through norm_at.
  bool has_conformal_structure() const { return static_cast<bool>(lambda_); }
  double factor_at(const Vector& x) const;

 private:
  FinslerField(Box chart, std::function<Norm(const Vector&)> norms, ScalarField lambda)
      : chart_(std::move(chart)), norms_(std::move(norms)), lambda_(std::move(lambda)) {}
  Box chart_;
  std::function<Norm(const Vector&)> norms_;
  ScalarField lambda_;
};

}  // namespace finsler
