#include "noiseplane/error.hpp"

namespace noiseplane {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::DuplicateDate: return "DuplicateDate";
    case ErrorCode::WindowOutOfRange: return "WindowOutOfRange";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::AdmissibilityViolated: return "AdmissibilityViolated";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BandTooNarrow: return "BandTooNarrow";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::SingularFit: return "SingularFit";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::ZeroActual: return "ZeroActual";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     std::optional<std::size_t> line) {
  std::string out{to_string(code)};
  if (line) out += " (line " + std::to_string(*line) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, message, line)), code_(code), line_(line) {}

}  // namespace noiseplane
