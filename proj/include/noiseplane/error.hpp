#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace noiseplane {

enum class ErrorCode {
  FileNotFound,
  MalformedRow,
  EmptySeries,
  DuplicateDate,
  WindowOutOfRange,
  ZeroVariance,
  SeriesTooShort,
  AdmissibilityViolated,
  DimensionMismatch,
  BandTooNarrow,
  InsufficientData,
  SingularFit,
  InsufficientHistory,
  ZeroActual,
  LengthMismatch,
  EmptyGroup,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
/// MalformedRow errors also carry the 1-based line number of the offending row.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace noiseplane
