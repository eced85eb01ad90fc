#pragma once

#include <stdexcept>
#include <string>

namespace kolmo {

enum class ErrorCode {
  DimensionMismatch,
  NonMonotoneLayers,
  NonzeroStarBlock,
  RankDeficientBlock,
  NonpositiveLambda,
  LevelOutOfRange,
  FieldIndexOutOfRange,
  UnsupportedDirection,
  UnsupportedIncrement,
  UnsupportedGroup,
  OrderOutOfRange,
  AlphaOutOfRange,
  InsufficientSmoothness,
  ConfigError,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonMonotoneLayers: return "NonMonotoneLayers";
    case ErrorCode::NonzeroStarBlock: return "NonzeroStarBlock";
    case ErrorCode::RankDeficientBlock: return "RankDeficientBlock";
    case ErrorCode::NonpositiveLambda: return "NonpositiveLambda";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::FieldIndexOutOfRange: return "FieldIndexOutOfRange";
    case ErrorCode::UnsupportedDirection: return "UnsupportedDirection";
    case ErrorCode::UnsupportedIncrement: return "UnsupportedIncrement";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::InsufficientSmoothness: return "InsufficientSmoothness";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace kolmo
