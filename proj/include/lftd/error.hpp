#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lftd {

enum class ErrorKind {
  ShapeMismatch,
  NonFinite,
  NotSquare,
  SpectrumOnCut,
  Divergence,
  SingularDenominator,
  BaseSingular,
  ClosureViolation,
  MembershipViolation,
  InvalidArgument,
  StepBoundViolation,
  PathLeavesDomain,
  HypothesisViolation,
  NotIdempotent,
  JUnitarityViolation,
  NotUnitary,
  NotIsometry,
  SpectrumViolation,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind. Every contract violation in the
/// library surfaces as one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lftd
