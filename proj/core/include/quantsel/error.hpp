#pragma once

#include <stdexcept>
#include <string>

namespace quantsel {

enum class ErrorCode {
  InvalidInput,
  DegenerateHull,
  DegeneratePosition,
  NotPositiveDefinite,
  NotFound,
  TooFewBodies,
  OptimizerFailed,
  SearchExhausted,
  PreconditionFailed,
  HalvingDegenerate,
  Unsupported,
  VerifyFailed,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::DegeneratePosition: return "DegeneratePosition";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::TooFewBodies: return "TooFewBodies";
    case ErrorCode::OptimizerFailed: return "OptimizerFailed";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::HalvingDegenerate: return "HalvingDegenerate";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::VerifyFailed: return "VerifyFailed";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, std::string(error_code_name(code)) + ": " + msg);
}

}  // namespace quantsel
