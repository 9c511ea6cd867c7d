#include "lcslab/error.hpp"

namespace lcslab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::InvalidTzr: return "InvalidTzr";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InputTooLarge: return "InputTooLarge";
    case ErrorKind::InvalidSymbol: return "InvalidSymbol";
    case ErrorKind::NoModifiableBlocks: return "NoModifiableBlocks";
    case ErrorKind::NoAdmissibleZ: return "NoAdmissibleZ";
    case ErrorKind::MisalignedInput: return "MisalignedInput";
    case ErrorKind::EmptyDomain: return "EmptyDomain";
    case ErrorKind::SpecViolation: return "SpecViolation";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace lcslab
