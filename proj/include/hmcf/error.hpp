#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hmcf {

enum class ErrorCode {
  InvalidArgument = 1,
  Stencil,
  Convexity,
  Degeneracy,
  Stiffness,
  GridMismatch,
  MultipleInterfaces,
  OpenInterface,
  Domain,
  Window,
  Sampling,
  Ellipticity,
  SingularJacobian,
  Transversality,
  Extinct,
  NonDegeneracy,
  Config,
  Io,
};

/// Stable, machine-readable name of an error code ("convexity", "stencil", ...).
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hmcf
