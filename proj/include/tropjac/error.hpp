#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropjac {

enum class ErrorCode {
  ContainmentViolation,
  CompatibilityViolation,
  ShapeMismatch,
  InvalidTorus,
  InvalidPolarization,
  NotInjective,
  NotSurjective,
  NotFinite,
  NotIsogeny,
  NotExact,
  NotTorsion,
  InvalidCover,
  OffsetOutOfRange,
  NotOptimal,
  SourceMismatch,
  NotProductTarget,
  ParseError,
  ValidationError,
  Internal,
};

inline std::string_view error_name(ErrorCode c) {
  switch (c) {
  case ErrorCode::ContainmentViolation: return "CONTAINMENT_VIOLATION";
  case ErrorCode::CompatibilityViolation: return "COMPATIBILITY_VIOLATION";
  case ErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
  case ErrorCode::InvalidTorus: return "INVALID_TORUS";
  case ErrorCode::InvalidPolarization: return "INVALID_POLARIZATION";
  case ErrorCode::NotInjective: return "NOT_INJECTIVE";
  case ErrorCode::NotSurjective: return "NOT_SURJECTIVE";
  case ErrorCode::NotFinite: return "NOT_FINITE";
  case ErrorCode::NotIsogeny: return "NOT_ISOGENY";
  case ErrorCode::NotExact: return "NOT_EXACT";
  case ErrorCode::NotTorsion: return "NOT_TORSION";
  case ErrorCode::InvalidCover: return "INVALID_COVER";
  case ErrorCode::OffsetOutOfRange: return "OFFSET_OUT_OF_RANGE";
  case ErrorCode::NotOptimal: return "NOT_OPTIMAL";
  case ErrorCode::SourceMismatch: return "SOURCE_MISMATCH";
  case ErrorCode::NotProductTarget: return "NOT_PRODUCT_TARGET";
  case ErrorCode::ParseError: return "PARSE_ERROR";
  case ErrorCode::ValidationError: return "VALIDATION_ERROR";
  case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string &msg) {
  throw Error(c, msg);
}

inline void require(bool cond, ErrorCode c, const std::string &msg) {
  if (!cond)
    fail(c, msg);
}

} // namespace tropjac
