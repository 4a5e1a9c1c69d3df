#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

/// Rejected input: bad construction parameters, malformed specs, violated
/// preconditions.
struct InvalidSpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A computation produced non-finite or otherwise unusable values.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An averaged form failed the positive-definiteness check.
struct DefinitenessError : NumericalError {
  explicit DefinitenessError(const std::string& what, double min_eig)
      : NumericalError(what), min_eigenvalue(min_eig) {}
  double min_eigenvalue;
};

/// An ODE trajectory left its chart or blew up.
struct FlowEscapeError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace finsler
