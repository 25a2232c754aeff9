#pragma once

#include <stdexcept>
#include <string>

namespace isoproj {

enum class ErrorCode {
  EmptyInput,
  DimensionMismatch,
  DegenerateSimplex,
  FaceNotInPolytope,
  PointNotInPolytope,
  RetriesExhausted,
  NonGenericDirection,
  DegenerateProjection,
  DegeneratePolytope,
  OriginOutside,
  NotSymmetric,
  RankDeficient,
  EmptySection,
  DimensionUnsupported,
  DegenerateBody,
  NotIsotropicInput,
  PreconditionViolated,
  DegenerateHull,
  Unbounded,
};

const char* error_name(ErrorCode code);

/// Raised for every domain failure; the code identifies the contract that failed.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace isoproj
