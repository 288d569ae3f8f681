#include "gmreslab/errors.hpp"

namespace gmreslab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DegenerateImage: return "DegenerateImage";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::FileError: return "FileError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
  }
  return "Unknown";
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : LabError(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what),
      line_(line) {}

}  // namespace gmreslab
