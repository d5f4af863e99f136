#include "lftd/error.hpp"

namespace lftd {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::NonFinite: return "non-finite";
    case ErrorKind::NotSquare: return "not-square";
    case ErrorKind::SpectrumOnCut: return "spectrum-on-cut";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::SingularDenominator: return "singular-denominator";
    case ErrorKind::BaseSingular: return "base-point-singular";
    case ErrorKind::ClosureViolation: return "closure-violation";
    case ErrorKind::MembershipViolation: return "membership-violation";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::StepBoundViolation: return "step-bound-violation";
    case ErrorKind::PathLeavesDomain: return "path-leaves-domain";
    case ErrorKind::HypothesisViolation: return "hypothesis-violation";
    case ErrorKind::NotIdempotent: return "not-idempotent";
    case ErrorKind::JUnitarityViolation: return "j-unitarity-violation";
    case ErrorKind::NotUnitary: return "non-unitary";
    case ErrorKind::NotIsometry: return "not-isometry";
    case ErrorKind::SpectrumViolation: return "j-spectrum-violation";
    case ErrorKind::Internal: return "internal-error";
  }
  return "unknown";
}

}  // namespace lftd
