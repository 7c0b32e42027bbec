#pragma once

// HDL codes from HL maximally recoverable codes by dropping and shortening.

#include <optional>
#include <string>

#include "hmrc/verify.hpp"

namespace hmrc {

struct DeriveLog {
  bool global_groups_aligned = true;  // r1 divides h1
  IndexSet primary;                   // first admissible set of the input
  IndexSet data, globals;             // split of the primary symbols
  IndexSet shortened;                 // data symbols fixed to zero
  IndexSet dropped;                   // every removed coordinate (original indices)
  IndexSet kept;                      // surviving coordinates in output order

  std::string to_string() const;
};

struct Derived {
  CodeInstance instance;
  DeriveLog log;
};

/// Errc::NotMR when the input fails certification, Errc::UnsupportedCase
/// unless r2 divides both h2 and r1 (or too few data symbols survive), and
/// Errc::VerificationFailed when the output is not an HDL-MRC.
Derived hdl_from_hl(const CodeInstance& hl, unsigned workers = 1);

/// HDL parameters produced from the given HL parameters.
CodeParams derived_params(const CodeParams& hl);

/// HL parameters whose derivation yields `hdl`; nullopt when none exists
/// (r2 does not divide h2).
std::optional<CodeParams> hl_source(const CodeParams& hdl);

}  // namespace hmrc
