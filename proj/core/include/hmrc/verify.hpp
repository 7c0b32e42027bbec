#pragma once

// Exhaustive certification: maximal recoverability, erasure recovery,
// brute-force minimum distance and locality checks on middle codes.

#include <optional>
#include <string>

#include "hmrc/construct.hpp"

namespace hmrc {

struct Certificate {
  bool pass = true;
  std::uint64_t checks = 0;
  std::uint64_t millis = 0;
  IndexSet E, T;  // first failing pair when !pass

  /// `verdict=pass checks=N millis=T` or `verdict=fail E=.. T=..`.
  std::string to_string() const;
};

bool correctable(const CodeInstance& inst, const IndexSet& erased);

/// For every admissible E and every h1-subset T of E the columns outside E
/// together with T must have rank n - k. The admissible stream is split into
/// `workers` ordered chunks; the certificate does not depend on the split.
Certificate is_mr(const CodeInstance& inst, unsigned workers = 1);

/// Same check against an arbitrary parity-check matrix and admissible stream.
Certificate check_mr(const MatrixF& H, std::uint32_t k, std::uint32_t h1, const AdmissibleSets& sets,
                     unsigned workers = 1);

/// Generator with the lexicographically first information set in identity form.
struct Encoder {
  MatrixF G;                                // k x n
  std::vector<std::size_t> info_positions;  // 0-based, increasing
};
Encoder make_encoder(const MatrixF& H);
std::vector<Element> encode(const Encoder& enc, std::span<const Element> data);

/// Fills in the missing symbols (nullopt) of a received word.
/// Errc::NotCorrectable when the erased columns are dependent.
std::vector<Element> recover(const CodeInstance& inst, const std::vector<std::optional<Element>>& received);
std::vector<Element> recover(const MatrixF& H, const std::vector<std::optional<Element>>& received);

/// Smallest number of dependent columns of H; nullopt when it exceeds cap.
std::optional<unsigned> min_distance(const MatrixF& H, unsigned cap);
std::optional<unsigned> min_distance(const CodeInstance& inst, std::optional<unsigned> cap = std::nullopt);

/// Parity-check matrix of the punctured code C|_coords, full row rank.
MatrixF puncture(const MatrixF& H, const IndexSet& coords);

enum class LocalityLevel { MiddleLocal, MiddleDataLocal, Hierarchical };

struct LocalityReport {
  bool ok = true;
  std::vector<std::string> lines;
  std::optional<unsigned> failed_group;  // 1-based mid group of the first failure
};

LocalityReport check_locality(const CodeInstance& inst, LocalityLevel level, unsigned workers = 1);

}  // namespace hmrc
