#pragma once

#include <stdexcept>
#include <string>

namespace brickwork {

// Matches the bw_status values in include/brickwork.h one-to-one
// (checked by static_asserts in capi.cpp).
enum class ErrorCode : int {
  Ok = 0,
  IoError = 1,
  ParseError = 2,
  DegenerateInput = 3,
  SingularConfiguration = 4,
  InsufficientShots = 5,
  InconsistentLabels = 6,
  NoIntersection = 7,
  BehindProjector = 8,
  EmptyScan = 9,
  NegativeHeight = 10,
  EmptyRegion = 11,
  ConfigError = 12,
  UnknownBrick = 13,
  InvalidArgument = 14,
  Internal = 15,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::SingularConfiguration: return "SingularConfiguration";
    case ErrorCode::InsufficientShots: return "InsufficientShots";
    case ErrorCode::InconsistentLabels: return "InconsistentLabels";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::BehindProjector: return "BehindProjector";
    case ErrorCode::EmptyScan: return "EmptyScan";
    case ErrorCode::NegativeHeight: return "NegativeHeight";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::UnknownBrick: return "UnknownBrick";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, long index = -1)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        index_(index) {}

  ErrorCode code() const noexcept { return code_; }

  // Offending element (shot, corner, cue point, ...) where applicable, else -1.
  long index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  long index_;
};

}  // namespace brickwork
