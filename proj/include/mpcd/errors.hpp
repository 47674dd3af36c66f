#pragma once

#include <stdexcept>
#include <string>

namespace mpcd {

// Error codes surfaced by the library. Each maps to one failure mode of a
// public operation; CLI exit codes and tests key off these.
enum class ErrorCode {
  DuplicateEdge,
  SelfLoop,
  NodeIdOutOfRange,
  EmptyGraph,
  SizeCapExceeded,
  SpaceExceeded,
  BallTooLarge,
  DomainOverflow,
  FamilyTooLarge,
  CapExceeded,
  EvaluatorInconsistent,
  NoSeedMeetsBound,
  InvariantViolated,
  PaletteTooSmall,
  DegreeTooHigh,
  SequenceSpaceTooLarge,
  InvalidParams,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NodeIdOutOfRange: return "NodeIdOutOfRange";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::SpaceExceeded: return "SpaceExceeded";
    case ErrorCode::BallTooLarge: return "BallTooLarge";
    case ErrorCode::DomainOverflow: return "DomainOverflow";
    case ErrorCode::FamilyTooLarge: return "FamilyTooLarge";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::EvaluatorInconsistent: return "EvaluatorInconsistent";
    case ErrorCode::NoSeedMeetsBound: return "NoSeedMeetsBound";
    case ErrorCode::InvariantViolated: return "InvariantViolated";
    case ErrorCode::PaletteTooSmall: return "PaletteTooSmall";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::SequenceSpaceTooLarge: return "SequenceSpaceTooLarge";
    case ErrorCode::InvalidParams: return "InvalidParams";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

inline void require(bool cond, ErrorCode code, const std::string& detail) {
  if (!cond) fail(code, detail);
}

}  // namespace mpcd
