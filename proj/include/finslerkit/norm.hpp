#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "finslerkit/linalg.hpp"

namespace finsler {

class NormImpl;

/// Structural view of a norm for serialization and introspection. `base` is
/// set for scaled/pullback families; callback norms expose only the family
/// name and dimension.
struct NormDescription {
  std::string family;
  int dim = 0;
  Matrix matrix;  // euclidean form, pullback matrix, or randers quadratic part
  Vector vector;  // randers one-form
  double scalar = 0.0;  // scale factor
  int p = 0;            // even_p exponent
  std::shared_ptr<const NormDescription> base;
};

/// A Minkowski norm on R^n (n >= 2): positively 1-homogeneous, convex,
/// positive away from the origin. Reversibility is not assumed; p(-xi) may
/// differ from p(xi) (Randers norms do).
///
/// Value type; cheap to copy. Construction validates family parameters
/// (SPD matrices, |beta|_a < 1, even p, invertible pullback matrix) and
/// throws InvalidSpecError on violation. Evaluation itself never validates.
class Norm {
 public:
  using Evaluator = std::function<double(const Vector&)>;
  using HessianFn = std::function<Matrix(const Vector&)>;

  static Norm euclidean(const Matrix& b1);
  static Norm euclidean_identity(int dim);
  static Norm even_p(int dim, int p);
  static Norm randers(const Matrix& a, const Vector& beta);
  static Norm scaled(const Norm& base, double lambda);
  /// The pullback xi -> base(a * xi). Pullbacks of pullbacks compose their
  /// matrices; pullbacks of Euclidean norms stay Euclidean.
  static Norm pullback(const Norm& base, const Matrix& a);
  /// User-supplied evaluator, optionally with an analytic Hessian of p^2.
  /// Only sampling-based validation is available for these.
  static Norm callback(int dim, Evaluator eval, HessianFn hessian_sq = nullptr);

  int dim() const;
  double operator()(const Vector& xi) const;
  /// p^2; the quantity whose second differential enters the averaging.
  double squared(const Vector& xi) const;

  bool has_analytic_hessian() const;
  /// Hessian of p^2 at xi != 0 in closed form. Throws InvalidSpecError if
  /// the family has none.
  Matrix analytic_hessian_sq(const Vector& xi) const;

  std::string family() const;
  NormDescription describe() const;
  const NormImpl& impl() const { return *impl_; }

 private:
  explicit Norm(std::shared_ptr<const NormImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const NormImpl> impl_;
};

/// Sampling report for the norm axioms: positive homogeneity, the triangle
/// inequality, and positivity on the euclidean unit sphere.
struct NormValidation {
  double max_homogeneity_residual = 0.0;  // max |p(t xi) - t p(xi)|
  double max_triangle_violation = 0.0;    // max(0, p(xi+eta) - p(xi) - p(eta))
  double min_on_unit_sphere = 0.0;
  double tolerance = 0.0;
  int samples = 0;

  bool homogeneous() const { return max_homogeneity_residual <= tolerance; }
  bool subadditive() const { return max_triangle_violation <= tolerance; }
  bool positive() const { return min_on_unit_sphere > tolerance; }
  bool ok() const { return homogeneous() && subadditive() && positive(); }
};

NormValidation validate_norm(const Norm& norm, int sample_count,
                             std::uint64_t seed, double tolerance = 1e-9);

}  // namespace finsler
