#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qf {

// Stable error taxonomy shared by every module. The numeric values are part
// of the C API (see include/qfilter/qfilter.h) and must not be reordered.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kDimensionMismatch = 2,
  kNotHermitian = 3,
  kZeroProbabilityOutcome = 4,
  kIncompatibleObservable = 5,
  kDegenerateBlock = 6,
  kNonFaithfulState = 7,
  kSyntaxError = 8,
  kUnboundSymbol = 9,
  kScatteringNotSupported = 10,
  kCollapsedNorm = 11,
  kNormOverflow = 12,
  kStepTooLarge = 13,
  kPositivityViolation = 14,
  kNonHermitianObservable = 15,
  kTruncationTooCoarse = 16,
  kNonpositiveVariance = 17,
  kZeroEvidence = 18,
  kCflViolation = 19,
  kSupportClipped = 20,
  kZeroDensityPointer = 21,
  kConfigParseError = 22,
  kExperimentUnknown = 23,
  kIoError = 24,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Syntax errors carry the byte offset and the tokens that would have been
// accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected,
              const std::string& message)
      : Error(ErrorCode::kSyntaxError, message),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

// Config errors point at a line/column in the source text (1-based).
class ConfigError : public Error {
 public:
  ConfigError(int line, int column, const std::string& message)
      : Error(ErrorCode::kConfigParseError, message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const char* message) {
  if (!condition) fail(code, message);
}

}  // namespace qf
