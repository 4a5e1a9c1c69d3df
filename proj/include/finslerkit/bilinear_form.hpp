#pragma once

#include "finslerkit/linalg.hpp"

namespace finsler {

enum class Definiteness { PositiveDefinite, PositiveSemiDefinite, Indefinite };

const char* to_string(Definiteness d);

/// Dense symmetric bilinear form with eigenvalue-based definiteness
/// classification. The PD/PSD threshold is scale-invariant:
/// |min eigenvalue| is compared against 1e-10 * trace.
class SymBilinearForm {
 public:
  explicit SymBilinearForm(const Matrix& entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  double operator()(const Vector& eta, const Vector& nu) const {
    return eta.dot(entries_ * nu);
  }

  Definiteness definiteness() const { return definiteness_; }
  double min_eigenvalue() const { return min_eigenvalue_; }
  /// Witness direction for the smallest eigenvalue.
  const Vector& min_eigenvector() const { return min_eigenvector_; }

 private:
  Matrix entries_;
  Definiteness definiteness_;
  double min_eigenvalue_;
  Vector min_eigenvector_;
};

}  // namespace finsler
