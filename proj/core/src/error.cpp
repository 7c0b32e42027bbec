#include "hmrc/error.hpp"

namespace hmrc {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonPrime: return "NonPrime";
    case Errc::DivisibilityViolation: return "DivisibilityViolation";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::Singular: return "Singular";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::DegreeCapExceeded: return "DegreeCapExceeded";
    case Errc::FieldTooSmall: return "FieldTooSmall";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::WrongH1: return "WrongH1";
    case Errc::NotCorrectable: return "NotCorrectable";
    case Errc::NotMR: return "NotMR";
    case Errc::UnsupportedCase: return "UnsupportedCase";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace hmrc
