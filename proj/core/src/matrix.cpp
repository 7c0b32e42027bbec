#include "hmrc/matrix.hpp"

#include <algorithm>
#include <limits>

namespace hmrc {

IndexSet::IndexSet(std::vector<std::uint32_t> coords) : v_(std::move(coords)) {
  std::sort(v_.begin(), v_.end());
  if (!v_.empty() && v_.front() == 0) throw Error(Errc::IndexOutOfRange, "coordinates are 1-based");
  if (std::adjacent_find(v_.begin(), v_.end()) != v_.end()) {
    throw Error(Errc::InvalidArgument, "duplicate coordinate in index set");
  }
}

IndexSet IndexSet::range(std::uint32_t first, std::uint32_t last) {
  std::vector<std::uint32_t> v;
  for (std::uint32_t i = first; i <= last; ++i) v.push_back(i);
  return IndexSet(std::move(v));
}

bool IndexSet::contains(std::uint32_t c) const noexcept { return std::binary_search(v_.begin(), v_.end(), c); }

IndexSet IndexSet::unite(const IndexSet& other) const {
  std::vector<std::uint32_t> out;
  std::set_union(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet IndexSet::minus(const IndexSet& other) const {
  std::vector<std::uint32_t> out;
  std::set_difference(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
  std::vector<std::uint32_t> out;
  std::set_intersection(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet IndexSet::complement(std::uint32_t n) const { return range(1, n).minus(*this); }

// ---------------------------------------------------------------------------

MatrixF::MatrixF(TowerPtr tower, Level level, std::size_t rows, std::size_t cols)
    : tower_(std::move(tower)), level_(level), rows_(rows), cols_(cols) {
  words_ = tower_->field(level_).words();
  data_.assign(rows_ * cols_ * words_, 0);
}

MatrixF MatrixF::identity(TowerPtr tower, Level level, std::size_t n) {
  MatrixF m(std::move(tower), level, n, n);
  for (std::size_t i = 0; i < n; ++i) m.field().set_one(m.raw(i, i));
  return m;
}

MatrixF MatrixF::from_rows(TowerPtr tower, Level level, const std::vector<std::vector<Element>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  MatrixF m(std::move(tower), level, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(Errc::ShapeMismatch, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Element MatrixF::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw Error(Errc::IndexOutOfRange, "matrix entry out of range");
  const Word* p = raw(r, c);
  return Element(tower_, level_, std::vector<Word>(p, p + words_));
}

void MatrixF::set(std::size_t r, std::size_t c, const Element& value) {
  if (r >= rows_ || c >= cols_) throw Error(Errc::IndexOutOfRange, "matrix entry out of range");
  if (!value.tower().same_as(*tower_)) throw Error(Errc::LevelMismatch, "entry from another tower");
  const Element v = value.level() == level_ ? value : tower_->embed(value, level_);
  std::copy(v.words().begin(), v.words().end(), raw(r, c));
}

MatrixF MatrixF::transpose() const {
  MatrixF t(tower_, level_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) field().copy(raw(i, j), t.raw(j, i));
  }
  return t;
}

MatrixF MatrixF::lift(Level level) const {
  if (level == level_) return *this;
  MatrixF out(tower_, level, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.set(i, j, at(i, j));
  }
  return out;
}

MatrixF MatrixF::select_columns(std::span<const std::size_t> cols) const {
  MatrixF out(tower_, level_, rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw Error(Errc::IndexOutOfRange, "column index out of range");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) field().copy(raw(i, cols[j]), out.raw(i, j));
  }
  return out;
}

MatrixF MatrixF::select_rows(std::span<const std::size_t> rows) const {
  MatrixF out(tower_, level_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw Error(Errc::IndexOutOfRange, "row index out of range");
    std::copy(row_ptr(rows[i]), row_ptr(rows[i]) + cols_ * words_, out.row_ptr(i));
  }
  return out;
}

bool MatrixF::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
}

MatrixF operator*(const MatrixF& a, const MatrixF& b) {
  if (a.cols_ != b.rows_) throw Error(Errc::ShapeMismatch, "matrix product dimensions");
  const Level lvl = std::max(a.level_, b.level_);
  const MatrixF x = a.lift(lvl), y = b.lift(lvl);
  MatrixF out(a.tower_, lvl, a.rows_, b.cols_);
  const Field& f = out.field();
  std::vector<Word> neg(f.words());
  for (std::size_t i = 0; i < x.rows_; ++i) {
    for (std::size_t k = 0; k < x.cols_; ++k) {
      const Word* c = x.raw(i, k);
      if (f.is_zero(c)) continue;
      f.neg(c, neg.data());
      f.sub_scaled(out.row_ptr(i), neg.data(), y.row_ptr(k), y.cols_);
    }
  }
  return out;
}

MatrixF operator+(const MatrixF& a, const MatrixF& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(Errc::ShapeMismatch, "matrix sum dimensions");
  const Level lvl = std::max(a.level_, b.level_);
  MatrixF x = a.lift(lvl);
  const MatrixF y = b.lift(lvl);
  const Field& f = x.field();
  for (std::size_t i = 0; i < x.rows_; ++i) {
    for (std::size_t j = 0; j < x.cols_; ++j) f.add(x.raw(i, j), y.raw(i, j), x.raw(i, j));
  }
  return x;
}

bool operator==(const MatrixF& a, const MatrixF& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.level_ == b.level_ &&
         a.tower_->same_as(*b.tower_) && a.data_ == b.data_;
}

MatrixF restrict(const MatrixF& m, const IndexSet& cols) {
  std::vector<std::size_t> idx;
  idx.reserve(cols.size());
  for (const auto c : cols) {
    if (c > m.cols()) throw Error(Errc::IndexOutOfRange, "restrict: coordinate " + std::to_string(c));
    idx.push_back(c - 1);
  }
  return m.select_columns(idx);
}

namespace {

// In-place Gauss-Jordan with first-nonzero pivoting. Returns pivot columns.
std::vector<std::size_t> eliminate(MatrixF& m, bool reduced) {
  const Field& f = m.field();
  const std::size_t w = f.words();
  std::vector<std::size_t> pivots;
  std::vector<Word> inv(w), tmp(m.cols() * w);
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && f.is_zero(m.raw(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      std::swap_ranges(m.row_ptr(piv), m.row_ptr(piv) + m.cols() * w, m.row_ptr(row));
    }
    f.inv(m.raw(row, col), inv.data());
    // only the tail from `col` onwards is nonzero in the pivot row
    f.scale(m.raw(row, col), inv.data(), m.cols() - col);
    const std::size_t start = reduced ? 0 : row + 1;
    for (std::size_t r = start; r < m.rows(); ++r) {
      if (r == row || f.is_zero(m.raw(r, col))) continue;
      f.copy(m.raw(r, col), tmp.data());
      f.sub_scaled(m.raw(r, col), tmp.data(), m.raw(row, col), m.cols() - col);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const MatrixF& m) {
  MatrixF work = m;
  return eliminate(work, false).size();
}

MatrixF rref(const MatrixF& m, std::vector<std::size_t>* pivots) {
  MatrixF work = m;
  auto p = eliminate(work, true);
  if (pivots) *pivots = std::move(p);
  return work;
}

MatrixF hstack(const MatrixF& a, const MatrixF& b) {
  if (a.rows() != b.rows()) throw Error(Errc::ShapeMismatch, "hstack row counts differ");
  const Level lvl = std::max(a.level(), b.level());
  const MatrixF x = a.lift(lvl), y = b.lift(lvl);
  MatrixF out(a.tower_ptr(), lvl, a.rows(), a.cols() + b.cols());
  const std::size_t w = out.stride();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(x.row_ptr(i), x.row_ptr(i) + x.cols() * w, out.row_ptr(i));
    std::copy(y.row_ptr(i), y.row_ptr(i) + y.cols() * w, out.raw(i, x.cols()));
  }
  return out;
}

MatrixF vstack(const MatrixF& a, const MatrixF& b) {
  if (a.cols() != b.cols()) throw Error(Errc::ShapeMismatch, "vstack column counts differ");
  const Level lvl = std::max(a.level(), b.level());
  const MatrixF x = a.lift(lvl), y = b.lift(lvl);
  MatrixF out(a.tower_ptr(), lvl, a.rows() + b.rows(), a.cols());
  const std::size_t w = out.stride();
  for (std::size_t i = 0; i < x.rows(); ++i) std::copy(x.row_ptr(i), x.row_ptr(i) + x.cols() * w, out.row_ptr(i));
  for (std::size_t i = 0; i < y.rows(); ++i) {
    std::copy(y.row_ptr(i), y.row_ptr(i) + y.cols() * w, out.row_ptr(x.rows() + i));
  }
  return out;
}

MatrixF inverse(const MatrixF& m) {
  if (m.rows() != m.cols()) throw Error(Errc::Singular, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::size_t> piv;
  const MatrixF r = rref(hstack(m, MatrixF::identity(m.tower_ptr(), m.level(), n)), &piv);
  if (piv.size() < n || piv[n - 1] >= n) throw Error(Errc::Singular, "matrix is singular");
  std::vector<std::size_t> right(n);
  for (std::size_t j = 0; j < n; ++j) right[j] = n + j;
  return r.select_columns(right);
}

MatrixF solve(const MatrixF& a, const MatrixF& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) throw Error(Errc::ShapeMismatch, "solve dimensions");
  const std::size_t n = a.rows();
  std::vector<std::size_t> piv;
  const MatrixF r = rref(hstack(a, b), &piv);
  if (piv.size() < n || piv[n - 1] >= n) throw Error(Errc::Singular, "matrix is singular");
  std::vector<std::size_t> right(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) right[j] = n + j;
  return r.select_columns(right);
}

MatrixF null_space(const MatrixF& m) {
  std::vector<std::size_t> piv;
  const MatrixF r = rref(m, &piv);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  MatrixF basis(m.tower_ptr(), m.level(), m.cols() - piv.size(), m.cols());
  std::size_t row = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    f.set_one(basis.raw(row, free));
    for (std::size_t i = 0; i < piv.size(); ++i) f.neg(r.raw(i, free), basis.raw(row, piv[i]));
    ++row;
  }
  return basis;
}

MatrixF coordinate_matrix(std::span<const Element> elems, Level base) {
  if (elems.empty()) throw Error(Errc::ShapeMismatch, "coordinate_matrix of an empty list");
  const auto& tower = elems.front().tower();
  Level lvl = elems.front().level();
  for (const auto& e : elems) lvl = std::max(lvl, e.level());
  if (static_cast<int>(lvl) <= static_cast<int>(base)) {
    throw Error(Errc::LevelMismatch, "elements must lie strictly above the base level");
  }
  const std::size_t dim = tower.degree_over(lvl, base);
  MatrixF out(elems.front().tower_ptr(), base, dim, elems.size());
  for (std::size_t j = 0; j < elems.size(); ++j) {
    const auto coords = tower.decompose(tower.embed(elems[j], lvl), base);
    for (std::size_t i = 0; i < dim; ++i) out.set(i, j, coords[i]);
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

IndependenceResult kwise_independent_columns(const MatrixF& coords, std::size_t k, std::uint64_t budget) {
  const std::size_t n = coords.cols();
  const std::size_t size = std::min(k, n);
  if (binomial(n, size) > budget) {
    throw Error(Errc::BudgetExceeded, "C(" + std::to_string(n) + "," + std::to_string(size) +
                                          ") subsets exceed the budget of " + std::to_string(budget));
  }
  IndependenceResult result;
  if (size == 0) return result;
  for_each_subset(n, size, [&](std::span<const std::size_t> subset) {
    if (rank(coords.select_columns(subset)) == size) return true;
    std::vector<std::uint32_t> w;
    for (auto i : subset) w.push_back(static_cast<std::uint32_t>(i + 1));
    result.independent = false;
    result.witness = IndexSet(std::move(w));
    return false;
  });
  return result;
}

IndependenceResult kwise_independent(std::span<const Element> elems, std::size_t k, Level base,
                                     std::uint64_t budget) {
  if (elems.empty() || k == 0) return {};
  const std::size_t size = std::min(k, elems.size());
  if (binomial(elems.size(), size) > budget) {
    throw Error(Errc::BudgetExceeded, "kwise_independent subset budget exceeded");
  }
  return kwise_independent_columns(coordinate_matrix(elems, base), k, budget);
}

}  // namespace hmrc
