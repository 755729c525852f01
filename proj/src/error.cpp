#include "hmult/error.hpp"

namespace hmult {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::RamifiedPrime: return "RamifiedPrime";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::ParityMismatch: return "ParityMismatch";
    case ErrorKind::UnsupportedWeight: return "UnsupportedWeight";
    case ErrorKind::CharacterLevelMismatch: return "CharacterLevelMismatch";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::NonIntegralLeadingPower: return "NonIntegralLeadingPower";
    case ErrorKind::PDividesLevel: return "PDividesLevel";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NoDecomposition: return "NoDecomposition";
    case ErrorKind::ClassNumberNotOne: return "ClassNumberNotOne";
    case ErrorKind::UnitInconsistency: return "UnitInconsistency";
    case ErrorKind::NonRationalCoefficient: return "NonRationalCoefficient";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace hmult
