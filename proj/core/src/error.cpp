#include "vfp/error.hpp"

namespace vfp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPositiveExtent: return "NonPositiveExtent";
    case ErrorKind::BadCount: return "BadCount";
    case ErrorKind::NonFiniteSample: return "NonFiniteSample";
    case ErrorKind::DegenerateDensity: return "DegenerateDensity";
    case ErrorKind::EquilibriumSingularity: return "EquilibriumSingularity";
    case ErrorKind::StencilTooSmall: return "StencilTooSmall";
    case ErrorKind::BadStageCount: return "BadStageCount";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::DisplacementTooLarge: return "DisplacementTooLarge";
    case ErrorKind::TooFewPeaks: return "TooFewPeaks";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownScenario: return "UnknownScenario";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

void raise(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

}  // namespace vfp
