#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chenrot {

enum class ErrorCode {
  DegenerateTangentPlane,
  NormalSpaceNotLorentzian,
  OutOfDomain,
  InsufficientSamples,
  InflectionPoint,
  NotSpacelike,
  StencilOutOfDomain,
  MinimalPoint,
  LightlikeMeanCurvature,
  UmbilicalPoint,
  AmbientMismatch,
  MixedRegime,
  NotHyperplanar,
  PreconditionViolation,
  NoAdmissibleRoot,
  DegenerateAcceleration,
  BlowUp,
  InvalidSpec,
};

std::string_view to_string(ErrorCode code);

// Every recoverable geometric failure in the library is reported through this
// type; the code names the violated precondition.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chenrot
