#pragma once

#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace divcurl {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Orientation,
  Topology,
  MeshMismatch,
  NonConvergence,
  IncompatibleRhs,
  DegenerateB,
  IncompatibleData,
  InsufficientBasis,
  EmptyGamma,
  EmptyPartitionPiece,
  NotSimplyConnected,
  CirculationDetected,
  Io,
};

/// Compact numeric text for messages; std::to_string drops small values to 0.000000.
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::Parse: return "PARSE_ERROR";
    case ErrorCode::Orientation: return "ORIENTATION_ERROR";
    case ErrorCode::Topology: return "TOPOLOGY_ERROR";
    case ErrorCode::MeshMismatch: return "MESH_MISMATCH";
    case ErrorCode::NonConvergence: return "NONCONVERGENCE";
    case ErrorCode::IncompatibleRhs: return "INCOMPATIBLE_RHS";
    case ErrorCode::DegenerateB: return "DEGENERATE_B";
    case ErrorCode::IncompatibleData: return "INCOMPATIBLE_DATA";
    case ErrorCode::InsufficientBasis: return "INSUFFICIENT_BASIS";
    case ErrorCode::EmptyGamma: return "EMPTY_GAMMA";
    case ErrorCode::EmptyPartitionPiece: return "EMPTY_PARTITION_PIECE";
    case ErrorCode::NotSimplyConnected: return "NOT_SIMPLY_CONNECTED";
    case ErrorCode::CirculationDetected: return "CIRCULATION_DETECTED";
    case ErrorCode::Io: return "IO_ERROR";
  }
  return "UNKNOWN";
}

/// Every failure in the library is reported through this type.
///
/// `condition()` is a stable identifier of the identity or contract that was
/// violated (for instance `normal_compatibility` for ∫ρ dx = ∫η_ν ds), and
/// `value()` carries the offending residual when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string condition = {},
        double value = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(message), code_(code), condition_(std::move(condition)), value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& condition() const noexcept { return condition_; }
  double value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  std::string condition_;
  double value_;
};

}  // namespace divcurl
