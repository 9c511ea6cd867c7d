#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcslab {

enum class ErrorKind {
  InvalidParams,
  InvalidTzr,
  TooLarge,
  InputTooLarge,
  InvalidSymbol,
  NoModifiableBlocks,
  NoAdmissibleZ,
  MisalignedInput,
  EmptyDomain,
  SpecViolation,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers can branch
// on it (e.g. fall back to sampling on TooLarge).
class LabError : public std::runtime_error {
 public:
  LabError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lcslab
