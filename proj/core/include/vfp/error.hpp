#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vfp {

/// Failure categories surfaced by the library. The CLI prints `name()` as the
/// machine-readable error token.
enum class ErrorKind {
  NonPositiveExtent,
  BadCount,
  NonFiniteSample,
  DegenerateDensity,
  EquilibriumSingularity,
  StencilTooSmall,
  BadStageCount,
  NonFiniteState,
  StepUnderflow,
  DisplacementTooLarge,
  TooFewPeaks,
  IoFailure,
  ParseError,
  UnknownScenario,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& detail);

}  // namespace vfp
