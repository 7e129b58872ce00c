#pragma once

#include <stdexcept>
#include <string>

namespace levitrap {

enum class ErrorCode {
  invalid_argument = 1,
  out_of_range,
  singular,
  no_trap,
  convergence,
  unbounded_heating,
  config,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::singular: return "singular";
    case ErrorCode::no_trap: return "no_trap";
    case ErrorCode::convergence: return "convergence";
    case ErrorCode::unbounded_heating: return "unbounded_heating";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "error";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace levitrap
