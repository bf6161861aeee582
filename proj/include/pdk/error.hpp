#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdk {

enum class ErrorCode {
  invalid_argument,
  domain,
  not_psd,
  singular,
  no_convergence,
  precondition,
  io,
  format,
};

/// Base class for every error raised by the library. The code survives the
/// trip through the C API unchanged.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NotPsdError : public Error {
 public:
  NotPsdError(const std::string& what, double value)
      : Error(ErrorCode::not_psd, what), value_(value) {}

  /// Offending eigenvalue, pivot or radicand.
  double value() const noexcept { return value_; }

 private:
  double value_;
};

class SingularError : public Error {
 public:
  SingularError(const std::string& what, std::size_t index)
      : Error(ErrorCode::singular, what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(ErrorCode::no_convergence, what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace pdk
