#include "ckbvar/error.hpp"

namespace ckbvar {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kUnavailableMorpheme: return "unavailable-morpheme";
    case ErrorKind::kTemplate: return "template";
    case ErrorKind::kUnsupportedDialect: return "unsupported-dialect";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kDegenerateTraining: return "degenerate-training";
    case ErrorKind::kEmptyInput: return "empty-input";
    case ErrorKind::kLabel: return "label";
    case ErrorKind::kUndefinedMetric: return "undefined-metric";
    case ErrorKind::kSplit: return "split";
    case ErrorKind::kAdapter: return "adapter";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kModelFormat: return "model-format";
  }
  return "unknown";
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + message),
      line_(line) {}

}  // namespace ckbvar
