#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ond {

enum class ErrorCode {
  InvalidInput,
  TriangleViolation,
  AsymmetricInput,
  NegativeDistance,
  EmptyTerminalSet,
  LevelOutOfRange,
  AlreadyExtended,
  UnknownLeaf,
  RootNotLeaf,
  InvalidCover,
  InvalidRequirement,
  NoFacilities,
  TooManyTerminals,
  TooManyPairs,
  TooManyPoints,
  TooManyFacilities,
  TooLarge,
  DepthTooLarge,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::EmptyTerminalSet: return "EmptyTerminalSet";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::AlreadyExtended: return "AlreadyExtended";
    case ErrorCode::UnknownLeaf: return "UnknownLeaf";
    case ErrorCode::RootNotLeaf: return "RootNotLeaf";
    case ErrorCode::InvalidCover: return "InvalidCover";
    case ErrorCode::InvalidRequirement: return "InvalidRequirement";
    case ErrorCode::NoFacilities: return "NoFacilities";
    case ErrorCode::TooManyTerminals: return "TooManyTerminals";
    case ErrorCode::TooManyPairs: return "TooManyPairs";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::TooManyFacilities: return "TooManyFacilities";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// d(u,w) > d(u,v) + d(v,w)
class TriangleViolation : public Error {
 public:
  TriangleViolation(std::size_t u, std::size_t v, std::size_t w)
      : Error(ErrorCode::TriangleViolation,
              "d(" + std::to_string(u) + "," + std::to_string(v) + ") exceeds the path through " +
                  std::to_string(w)),
        u_(u), v_(v), w_(w) {}
  std::size_t u() const noexcept { return u_; }
  std::size_t v() const noexcept { return v_; }
  std::size_t w() const noexcept { return w_; }

 private:
  std::size_t u_, v_, w_;
};

// Oracle size limits, surfaced in error messages.
inline Error cap_exceeded(ErrorCode code, const char* what, std::size_t got, std::size_t cap) {
  return Error(code, std::string(what) + " " + std::to_string(got) + " exceeds cap " +
                         std::to_string(cap));
}

}  // namespace ond
