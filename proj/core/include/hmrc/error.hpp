#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hmrc {

enum class Errc {
  NonPrime,
  DivisibilityViolation,
  DivisionByZero,
  LevelMismatch,
  Singular,
  IndexOutOfRange,
  BudgetExceeded,
  VerificationFailed,
  DegreeCapExceeded,
  FieldTooSmall,
  ShapeMismatch,
  WrongH1,
  NotCorrectable,
  NotMR,
  UnsupportedCase,
  InvalidArgument,
  Parse,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hmrc
