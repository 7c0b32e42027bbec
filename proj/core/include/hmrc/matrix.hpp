#pragma once

// Dense exact matrices over one level of a field tower.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "hmrc/galois.hpp"

namespace hmrc {

/// Strictly increasing set of 1-based coordinates.
class IndexSet {
 public:
  IndexSet() = default;
  /// Sorts and validates; duplicates or zero entries throw.
  IndexSet(std::vector<std::uint32_t> coords);  // NOLINT(google-explicit-constructor)
  IndexSet(std::initializer_list<std::uint32_t> coords) : IndexSet(std::vector<std::uint32_t>(coords)) {}

  static IndexSet range(std::uint32_t first, std::uint32_t last);  // [first, last]

  std::size_t size() const noexcept { return v_.size(); }
  bool empty() const noexcept { return v_.empty(); }
  std::uint32_t operator[](std::size_t i) const { return v_[i]; }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }
  const std::vector<std::uint32_t>& values() const noexcept { return v_; }
  bool contains(std::uint32_t c) const noexcept;

  IndexSet unite(const IndexSet& other) const;
  IndexSet minus(const IndexSet& other) const;
  IndexSet intersect(const IndexSet& other) const;
  /// Complement within [1, n].
  IndexSet complement(std::uint32_t n) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet& a, const IndexSet& b) { return a.v_ <=> b.v_; }

 private:
  std::vector<std::uint32_t> v_;
};

class MatrixF {
 public:
  MatrixF() = default;
  /// Zero matrix.
  MatrixF(TowerPtr tower, Level level, std::size_t rows, std::size_t cols);

  static MatrixF identity(TowerPtr tower, Level level, std::size_t n);
  /// Row-major element grid; entries are embedded into `level`.
  static MatrixF from_rows(TowerPtr tower, Level level, const std::vector<std::vector<Element>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Level level() const noexcept { return level_; }
  const FieldTower& tower() const { return *tower_; }
  const TowerPtr& tower_ptr() const noexcept { return tower_; }
  const Field& field() const { return tower_->field(level_); }
  std::size_t stride() const noexcept { return words_; }

  Element at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Element& value);
  const Word* raw(std::size_t r, std::size_t c) const { return data_.data() + (r * cols_ + c) * words_; }
  Word* raw(std::size_t r, std::size_t c) { return data_.data() + (r * cols_ + c) * words_; }
  const Word* row_ptr(std::size_t r) const { return raw(r, 0); }
  Word* row_ptr(std::size_t r) { return raw(r, 0); }

  MatrixF transpose() const;
  /// Entries embedded into a higher level.
  MatrixF lift(Level level) const;
  /// Columns by 0-based position, in the given order.
  MatrixF select_columns(std::span<const std::size_t> cols) const;
  MatrixF select_rows(std::span<const std::size_t> rows) const;
  bool is_zero() const;

  friend MatrixF operator*(const MatrixF& a, const MatrixF& b);
  friend MatrixF operator+(const MatrixF& a, const MatrixF& b);
  friend bool operator==(const MatrixF& a, const MatrixF& b);

 private:
  TowerPtr tower_;
  Level level_ = Level::Base;
  std::size_t rows_ = 0, cols_ = 0, words_ = 1;
  std::vector<Word> data_;
};

/// H|_E: columns listed by the 1-based index set, in order. Throws
/// Errc::IndexOutOfRange for coordinates beyond cols().
MatrixF restrict(const MatrixF& m, const IndexSet& cols);

std::size_t rank(const MatrixF& m);
/// Reduced row echelon form with leading ones (zero rows kept at the bottom).
/// Pivot columns (0-based) are written to `pivots` when given.
MatrixF rref(const MatrixF& m, std::vector<std::size_t>* pivots = nullptr);
/// Throws Errc::Singular for rank-deficient or non-square input.
MatrixF inverse(const MatrixF& m);
/// Rows form a basis of {v : m v^T = 0}; (cols - rank) x cols.
MatrixF null_space(const MatrixF& m);
/// Solves a x = b for square nonsingular a (b may have several columns).
MatrixF solve(const MatrixF& a, const MatrixF& b);

MatrixF hstack(const MatrixF& a, const MatrixF& b);
MatrixF vstack(const MatrixF& a, const MatrixF& b);

/// Vectors (one per column) over `base`, one column per element.
MatrixF coordinate_matrix(std::span<const Element> elems, Level base);

struct IndependenceResult {
  bool independent = true;
  /// 1-based positions in the input of a dependent subset when !independent.
  IndexSet witness;
};

inline constexpr std::uint64_t kDefaultSubsetBudget = 1'000'000;

/// Every subset of size min(k, |S|) of the element multiset is linearly
/// independent over `base` (elements are decomposed into base coordinates).
/// Throws Errc::BudgetExceeded when C(|S|, min(k,|S|)) > budget.
IndependenceResult kwise_independent(std::span<const Element> elems, std::size_t k, Level base,
                                     std::uint64_t budget = kDefaultSubsetBudget);
/// Same test on the columns of a coordinate matrix.
IndependenceResult kwise_independent_columns(const MatrixF& coords, std::size_t k,
                                             std::uint64_t budget = kDefaultSubsetBudget);

/// Binomial coefficient saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// Calls fn(span of 0-based indices) for every k-subset of [0, n) in
/// lexicographic order; stops early when fn returns false.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(std::span<const std::size_t>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace hmrc
