#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace groundsight {

enum class ErrorKind {
  // geometry / pipeline
  EmptyCloud,
  DegenerateGeometry,
  AllPointsFiltered,
  AttitudeOutOfRange,
  DimensionMismatch,
  // tensor kernels
  ShapeMismatch,
  GroupDivisibility,
  WeightShapeMismatch,
  // collage synthesis
  PartitionViolation,
  InsufficientBank,
  // metrics
  LengthMismatch,
  // generic
  InvalidArgument,
  Io,
  Config,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyCloud: return "EmptyCloud";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::AllPointsFiltered: return "AllPointsFiltered";
    case ErrorKind::AttitudeOutOfRange: return "AttitudeOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::GroupDivisibility: return "GroupDivisibility";
    case ErrorKind::WeightShapeMismatch: return "WeightShapeMismatch";
    case ErrorKind::PartitionViolation: return "PartitionViolation";
    case ErrorKind::InsufficientBank: return "InsufficientBank";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace groundsight
