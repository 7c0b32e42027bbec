#pragma once

// Multisets of extension elements that are k-wise independent over a subfield.
//
// Results are returned as coordinate matrices over the subfield (one column
// per element); callers embed the columns into a concrete extension of the
// achieved degree.

#include <cstddef>
#include <string_view>

#include "hmrc/matrix.hpp"

namespace hmrc {

enum class IndepMethod { Bch, Greedy };

std::string_view method_name(IndepMethod m) noexcept;

struct IndependentSet {
  MatrixF coords;       // degree x count, entries in the subfield
  unsigned degree = 0;  // extension degree over the subfield
  std::size_t kwise = 0;
  IndepMethod method = IndepMethod::Bch;
  /// Confirmed by checking every subset; false when the subset count exceeds
  /// kDefaultSubsetBudget and the BCH structure alone guarantees independence.
  bool exhaustive = true;

  std::size_t count() const noexcept { return coords.cols(); }
};

/// Columns of a BCH-style parity-check matrix over the field at `sub`:
/// rows a_j^i for a reduced exponent set i in {0, ..., d-2}, expanded into
/// subfield coordinates and reduced to a row basis. The (d-1)-wise
/// independence is certified by subset rank checks when at most
/// kDefaultSubsetBudget subsets are involved; Errc::VerificationFailed
/// otherwise.
IndependentSet bch_parity_columns(const TowerPtr& tower, Level sub, std::size_t n_needed, std::size_t d);

/// Scans degrees from ceil(log_Q n_needed) up to degree_cap and greedily keeps
/// canonical-order vectors that preserve k-wise independence.
/// Errc::DegreeCapExceeded when no degree up to the cap suffices.
IndependentSet greedy_independent(const TowerPtr& tower, Level sub, std::size_t n_needed, std::size_t k,
                                  unsigned degree_cap);

/// BCH first, greedy (capped at the BCH degree bound) if certification fails.
IndependentSet independent_set(const TowerPtr& tower, Level sub, std::size_t n_needed, std::size_t k);

/// Columns of `set` as elements of `level` in `target`, whose degree over
/// `sub` must equal set.degree. The subfield must be shared with the tower
/// the set was built on.
std::vector<Element> embed_columns(const IndependentSet& set, const TowerPtr& target, Level sub, Level level);

}  // namespace hmrc
