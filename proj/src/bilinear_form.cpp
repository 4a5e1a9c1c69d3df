#include "finslerkit/bilinear_form.hpp"

#include <cmath>

#include "finslerkit/errors.hpp"

namespace finsler {

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "positive_definite";
    case Definiteness::PositiveSemiDefinite: return "positive_semidefinite";
    default: return "indefinite";
  }
}

SymBilinearForm::SymBilinearForm(const Matrix& entries) {
  if (entries.rows() != entries.cols())
    throw InvalidSpecError("bilinear form: matrix not square");
  if (!all_finite(entries))
    throw NumericalError("bilinear form: non-finite entries");
  double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  if ((entries - entries.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidSpecError("bilinear form: matrix not symmetric");
  entries_ = symmetrized(entries);

  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_);
  min_eigenvalue_ = es.eigenvalues()[0];
  min_eigenvector_ = es.eigenvectors().col(0);
  double tol = 1e-10 * std::max(std::abs(entries_.trace()),
                                std::numeric_limits<double>::min());
  if (min_eigenvalue_ > tol)
    definiteness_ = Definiteness::PositiveDefinite;
  else if (min_eigenvalue_ > -tol)
    definiteness_ = Definiteness::PositiveSemiDefinite;
  else
    definiteness_ = Definiteness::Indefinite;
}

}  // namespace finsler
