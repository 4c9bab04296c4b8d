#pragma once

#include <stdexcept>
#include <string>

namespace evpos {

/// Base class of all library errors. `code()` is a stable machine-readable
/// identifier used by the CLI error JSON; `exit_code()` groups errors into
/// the process exit classes (1 = parse, 2 = precondition, 3 = numerical).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }
  virtual int exit_code() const noexcept = 0;

 private:
  std::string code_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("ParseError", message) {}
  int exit_code() const noexcept override { return 1; }
};

class PreconditionError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

class NumericalError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

#define EVPOS_DEFINE_ERROR(NAME, BASE)                                \
  class NAME : public BASE {                                          \
   public:                                                            \
    explicit NAME(const std::string& message) : BASE(#NAME, message) {} \
  }

// Violated input contracts.
EVPOS_DEFINE_ERROR(PreconditionFailed, PreconditionError);
EVPOS_DEFINE_ERROR(NotReal, PreconditionError);
EVPOS_DEFINE_ERROR(NotDiagonal, PreconditionError);
EVPOS_DEFINE_ERROR(NotSimple, PreconditionError);
EVPOS_DEFINE_ERROR(NotAnEigenvector, PreconditionError);
EVPOS_DEFINE_ERROR(NotEventuallyStronglyPositive, PreconditionError);
EVPOS_DEFINE_ERROR(ZeroPairing, PreconditionError);
EVPOS_DEFINE_ERROR(DimensionTooSmall, PreconditionError);
EVPOS_DEFINE_ERROR(BadGridSize, PreconditionError);
EVPOS_DEFINE_ERROR(EpsilonOutOfRange, PreconditionError);
EVPOS_DEFINE_ERROR(NonPositiveParameters, PreconditionError);
EVPOS_DEFINE_ERROR(SpectralBoundViolation, PreconditionError);
EVPOS_DEFINE_ERROR(NormTooLarge, PreconditionError);
EVPOS_DEFINE_ERROR(ContourTooClose, PreconditionError);

// Failures detected during computation.
EVPOS_DEFINE_ERROR(SingularResolvent, NumericalError);
EVPOS_DEFINE_ERROR(ConvergenceFailure, NumericalError);
EVPOS_DEFINE_ERROR(Overflow, NumericalError);
EVPOS_DEFINE_ERROR(SeriesDiverges, NumericalError);
EVPOS_DEFINE_ERROR(PerturbedSpectrum, NumericalError);
EVPOS_DEFINE_ERROR(SpectralCollision, NumericalError);
EVPOS_DEFINE_ERROR(EigenvalueCollision, NumericalError);

#undef EVPOS_DEFINE_ERROR

}  // namespace evpos
