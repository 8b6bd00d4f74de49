#pragma once

#include <stdexcept>
#include <string>

namespace stablewave {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A series hit its term cap, or lost too much precision to cancellation.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Quadrature could not meet its tolerance within the panel budget.
class ToleranceNotMet : public Error {
public:
  ToleranceNotMet(const std::string& what, double achieved_error)
      : Error(what + " (error estimate " + std::to_string(achieved_error) + ")"),
        achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

private:
  double achieved_error_;
};

/// A parameter branch the library deliberately does not construct
/// (the alpha = 1, beta != 0 packet).
class UnsupportedBranch : public Error {
public:
  using Error::Error;
};

/// Evaluation requested inside the band where derivatives blow up.
class SingularityError : public Error {
public:
  using Error::Error;
};

/// A ratio whose denominator vanished.
class DivisionByZero : public Error {
public:
  using Error::Error;
};

/// An amplitude method was paired with parameters it cannot represent.
class MethodMismatch : public Error {
public:
  using Error::Error;
};

/// A Fourier transform that should be real came back with a sizeable
/// imaginary part.
class ImaginaryResidue : public Error {
public:
  ImaginaryResidue(const std::string& what, double residue)
      : Error(what + " (imaginary residue " + std::to_string(residue) + ")"), residue_(residue) {}

  double residue() const noexcept { return residue_; }

private:
  double residue_;
};

}  // namespace stablewave
