#pragma once

// Code parameters, coordinate layout, erasure-pattern enumeration and the
// closed-form distance values.

#include <cstdint>
#include <functional>
#include <string_view>
#include <utility>
#include <vector>

#include "hmrc/matrix.hpp"

namespace hmrc {

enum class Family : std::uint8_t { HL, HDL };

std::string_view family_name(Family f) noexcept;
Family family_from_name(std::string_view name);

struct CodeParams {
  Family family = Family::HL;
  unsigned k = 1, r1 = 1, r2 = 1, h1 = 0, h2 = 0, delta = 0;

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

struct Dims {
  unsigned t1 = 0, t2 = 0, n1 = 0, n2 = 0, n = 0;
};

/// Throws Errc::DivisibilityViolation when the family's divisibility
/// conditions fail and Errc::InvalidArgument for k, r1 or r2 equal to zero.
Dims derive_dims(const CodeParams& p);
bool valid_params(const CodeParams& p) noexcept;

/// Every valid parameter set of either family with n <= max_n, ordered by n,
/// then family, then (k, r1, r2, h1, h2, delta).
std::vector<CodeParams> enumerate_params(unsigned max_n);

/// Coordinates are 1-based and contiguous: each A_i holds its local groups in
/// order, followed (HDL only) by the h2 mid-level parity positions; HDL global
/// parities are the last h1 coordinates.
struct GroupStructure {
  std::vector<IndexSet> A;
  std::vector<std::vector<IndexSet>> B;
  std::vector<IndexSet> mid_parities;  // HDL: h2 positions per A_i; HL: empty sets
  IndexSet tail;                       // HDL: last h1 coordinates; HL: empty
};

GroupStructure group_structure(const CodeParams& p);

/// Admissible sets E in lexicographic order with random access by index.
/// Per mid group the choices are the r1-subsets of A_i with at most r2
/// coordinates in each local group; E is their product (the HDL tail is
/// always fully included since |E| = k + h1).
class AdmissibleSets {
 public:
  explicit AdmissibleSets(const CodeParams& p);

  /// Number of sets, saturating at UINT64_MAX.
  std::uint64_t size() const noexcept { return size_; }
  std::size_t choices_per_group() const noexcept { return choices_.size(); }
  IndexSet at(std::uint64_t index) const;
  /// Calls fn(index, E) for index in [begin, end); stops when fn returns false.
  void for_each(std::uint64_t begin, std::uint64_t end,
                const std::function<bool(std::uint64_t, const IndexSet&)>& fn) const;

  /// Splits [0, size) into at most `workers` contiguous, ordered ranges.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> chunks(unsigned workers) const;

 private:
  CodeParams params_;
  Dims dims_;
  GroupStructure groups_;
  std::vector<std::vector<std::uint32_t>> choices_;  // 0-based offsets inside A_i
  std::uint64_t size_ = 0;
};

/// (delta, h2) erasure pattern. delta[i][s] holds local positions in [1, n2],
/// gamma[i] holds positions in [1, n1] of A_i, extra holds global coordinates.
struct ErasurePattern {
  std::vector<std::vector<std::vector<std::uint32_t>>> delta;
  std::vector<std::vector<std::uint32_t>> gamma;
  IndexSet extra;

  /// Global coordinates erased by the pattern.
  IndexSet footprint(const CodeParams& p) const;
  /// Throws Errc::InvalidArgument when sizes, ranges or disjointness fail.
  void validate(const CodeParams& p) const;

  friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;
};

/// Lexicographic enumeration over groups (group 1 most significant); within a
/// group the local choices for s = 1..t2 precede gamma. With with_extra, each
/// pattern is followed by all h1-subsets of the remaining coordinates.
void for_each_pattern(const CodeParams& p, bool with_extra, const std::function<bool(const ErasurePattern&)>& fn);
std::uint64_t count_patterns(const CodeParams& p, bool with_extra);

// Closed-form distance values.
long rd_bound(long n, long k, long r, long delta);
long local_mrc_distance(long h, long delta, long r);
long data_local_mrc_distance(long h, long delta);
long hier_bound(long n, long k, long r1, long r2, long delta1, long delta2);
long hdl_mrc_distance(long h1, long h2, long delta);

/// hier_bound with the HDL mapping delta2 = delta + 1, delta1 = h2 + delta + 1.
long hier_bound(const CodeParams& p);

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace hmrc
