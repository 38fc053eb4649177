#include "chenrot/error.hpp"

namespace chenrot {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateTangentPlane: return "DegenerateTangentPlane";
    case ErrorCode::NormalSpaceNotLorentzian: return "NormalSpaceNotLorentzian";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::InflectionPoint: return "InflectionPoint";
    case ErrorCode::NotSpacelike: return "NotSpacelike";
    case ErrorCode::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorCode::MinimalPoint: return "MinimalPoint";
    case ErrorCode::LightlikeMeanCurvature: return "LightlikeMeanCurvature";
    case ErrorCode::UmbilicalPoint: return "UmbilicalPoint";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::MixedRegime: return "MixedRegime";
    case ErrorCode::NotHyperplanar: return "NotHyperplanar";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::NoAdmissibleRoot: return "NoAdmissibleRoot";
    case ErrorCode::DegenerateAcceleration: return "DegenerateAcceleration";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

}  // namespace chenrot
