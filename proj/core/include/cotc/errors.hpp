#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace cotc {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical domain (non-finite entries, bad parameters).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iteration failed to converge or a computation is numerically meaningless.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Linear system is singular or too ill-conditioned to trust.
class SingularityError : public NumericError {
 public:
  SingularityError(const std::string& what, double condition)
      : NumericError(what), condition_(condition) {}

  /// 1-norm condition estimate (infinity for an exact zero pivot).
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// The root finder was given an interval without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Ramp slope equals the feedback slope at the switching instant, so the
/// switching time is not locally determined.
class DegenerateSwitchingError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A rational or resolvent expression was evaluated on (or too near) a pole.
class PoleEvaluationError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The feedback signal never met the ramp within the scan horizon.
class MissedSwitchingError : public NumericError {
 public:
  MissedSwitchingError(const std::string& what, std::size_t cycle)
      : NumericError(what), cycle_(cycle) {}

  std::size_t cycle() const noexcept { return cycle_; }

 private:
  std::size_t cycle_;
};

/// Caller asked for a combination the library does not support
/// (e.g. a formula that does not apply to the chosen scheme).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace cotc
