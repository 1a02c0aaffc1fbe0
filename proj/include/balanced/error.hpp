#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace balanced {

using PointId = std::size_t;

enum class ErrorCode {
  CollinearTriple,
  DuplicateAbscissa,
  ColorImbalance,
  EmptyInstance,
  CoordinateRange,
  SameColorPair,
  BoundTooSmall,
  InvalidArgument,
  DegenerateDirection,
  EvenR,
  LevelOutOfRange,
  WrongSubset,
  NotPositivelyOriented,
  NotDeltaPreserving,
  LemmaViolation,
  UnclassifiableTransition,
  CertificateFailure,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CollinearTriple: return "CollinearTriple";
    case ErrorCode::DuplicateAbscissa: return "DuplicateAbscissa";
    case ErrorCode::ColorImbalance: return "ColorImbalance";
    case ErrorCode::EmptyInstance: return "EmptyInstance";
    case ErrorCode::CoordinateRange: return "CoordinateRange";
    case ErrorCode::SameColorPair: return "SameColorPair";
    case ErrorCode::BoundTooSmall: return "BoundTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::EvenR: return "EvenR";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::WrongSubset: return "WrongSubset";
    case ErrorCode::NotPositivelyOriented: return "NotPositivelyOriented";
    case ErrorCode::NotDeltaPreserving: return "NotDeltaPreserving";
    case ErrorCode::LemmaViolation: return "LemmaViolation";
    case ErrorCode::UnclassifiableTransition: return "UnclassifiableTransition";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
  }
  return "Unknown";
}

/// Every failure raised by the library. `points()` names the offending
/// instance points when the failure is tied to specific ones.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::vector<PointId> points = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        points_(std::move(points)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<PointId>& points() const noexcept { return points_; }

 private:
  ErrorCode code_;
  std::vector<PointId> points_;
};

}  // namespace balanced
