#pragma once

#include <stdexcept>
#include <string>

namespace qsquare {

enum class ErrorCode {
  Parse,
  Validation,
  NotSeparating,
  EmptyStateSet,
  NotAPartition,
  CyclicGrammar,
  SymbolClash,
  MissingPaletteEntry,
  ThetaOutOfRange,
  MissingVector,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above. The C
/// API maps them one-to-one onto qsq_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qsquare
