#ifndef RINGSPEC_ERROR_HPP
#define RINGSPEC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ringspec {

/// A boundary-condition matrix (or chart) failed validation: not unitary, or
/// off the S^3 constraint. Carries the measured residual.
class BcValidationError : public std::invalid_argument {
 public:
  BcValidationError(const std::string& what, double residual)
      : std::invalid_argument(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class NonUnitaryError : public BcValidationError {
 public:
  using BcValidationError::BcValidationError;
};

/// Malformed boundary-condition text or unknown family name.
class BcParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Kernel evaluated outside its domain (e.g. a mass mode passed to the
/// generic wavenumber path).
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The spectral function has a (numerical) pole at this point.
class PoleError : public std::runtime_error {
 public:
  PoleError(const std::string& what, double at)
      : std::runtime_error(what), at_(at) {}
  double at() const noexcept { return at_; }

 private:
  double at_;
};

class InvalidRepresentation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ringspec

#endif  // RINGSPEC_ERROR_HPP
