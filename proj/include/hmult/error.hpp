#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hmult {

enum class ErrorKind {
  NonSquare,
  NonIntegral,
  ZeroPolynomial,
  RamifiedPrime,
  NotFundamental,
  ParityMismatch,
  UnsupportedWeight,
  CharacterLevelMismatch,
  InsufficientPrecision,
  NonIntegralLeadingPower,
  PDividesLevel,
  NotPrime,
  InvalidArgument,
  NoDecomposition,
  ClassNumberNotOne,
  UnitInconsistency,
  NonRationalCoefficient,
  ParseError,
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hmult
