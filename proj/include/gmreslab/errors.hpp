#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmreslab {

enum class ErrorCode {
  InvalidArgument = 1,
  NotHermitian,
  NoConvergence,
  SingularMatrix,
  ZeroVector,
  DegenerateImage,
  BudgetExceeded,
  InvalidSpec,
  FileError,
  ParseError,
  UnsupportedFormat,
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library.
class LabError : public std::runtime_error {
 public:
  LabError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Matrix Market syntax error; `line()` is 1-based.
class ParseError : public LabError {
 public:
  ParseError(std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gmreslab
