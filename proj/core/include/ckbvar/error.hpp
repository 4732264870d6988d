#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ckbvar {

enum class ErrorKind {
  kInvalidInput,
  kUnavailableMorpheme,
  kTemplate,
  kUnsupportedDialect,
  kSchema,
  kParse,
  kDegenerateTraining,
  kEmptyInput,
  kLabel,
  kUndefinedMetric,
  kSplit,
  kAdapter,
  kIo,
  kModelFormat,
};

// Stable machine-readable name, e.g. "unsupported-dialect".
std::string_view error_kind_name(ErrorKind kind);

// All library failures are reported through this one exception type; callers
// that need to branch inspect kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse errors carry the 1-based line number of the offending input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ckbvar
