#pragma once

// Brute-force reference computations for tests. They use only field
// arithmetic and exhaustive enumeration, never the library's elimination.

#include <cstdint>
#include <functional>
#include <vector>

#include "hmrc/matrix.hpp"

namespace hmrc::oracle {

/// Calls fn for every vector of `len` base-field coefficients.
inline void for_each_coeff_vector(const FieldTower& t, Level base, std::size_t len,
                                  const std::function<void(const std::vector<Element>&)>& fn) {
  const std::uint64_t q = *t.field(base).order();
  std::vector<std::uint64_t> digits(len, 0);
  while (true) {
    std::vector<Element> c;
    for (auto d : digits) c.push_back(t.from_rank(base, d));
    fn(c);
    std::size_t i = 0;
    while (i < len && ++digits[i] == q) digits[i++] = 0;
    if (i == len) return;
  }
}

/// Some nontrivial combination over `base` vanishes.
inline bool dependent(const std::vector<Element>& elems, Level base) {
  if (elems.empty()) return false;
  const FieldTower& t = elems.front().tower();
  bool found = false;
  for_each_coeff_vector(t, base, elems.size(), [&](const std::vector<Element>& c) {
    if (found) return;
    bool nontrivial = false;
    Element sum = t.zero(elems.front().level());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (!c[i].is_zero()) nontrivial = true;
      sum = sum + c[i] * elems[i];
    }
    if (nontrivial && sum.is_zero()) found = true;
  });
  return found;
}

inline bool kwise(const std::vector<Element>& elems, std::size_t k, Level base) {
  const std::size_t size = std::min(k, elems.size());
  bool ok = true;
  for_each_subset(elems.size(), size, [&](std::span<const std::size_t> idx) {
    std::vector<Element> sub;
    for (auto i : idx) sub.push_back(elems[i]);
    if (dependent(sub, base)) ok = false;
    return ok;
  });
  return ok;
}

/// Laplace expansion.
inline Element det(const std::vector<std::vector<Element>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  Element total = a[0][0].tower().zero(a[0][0].level());
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Element>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      minor.emplace_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) minor.back().push_back(a[r][j]);
      }
    }
    const Element term = a[0][c] * det(minor);
    total = (c % 2 == 0) ? total + term : total - term;
  }
  return total;
}

/// Every square column submatrix of a full-width generator is nonsingular.
inline bool all_minors_nonzero(const MatrixF& g) {
  const std::size_t k = g.rows();
  bool ok = true;
  for_each_subset(g.cols(), k, [&](std::span<const std::size_t> cols) {
    std::vector<std::vector<Element>> sq(k);
    for (std::size_t r = 0; r < k; ++r) {
      for (auto c : cols) sq[r].push_back(g.at(r, c));
    }
    if (det(sq).is_zero()) ok = false;
    return ok;
  });
  return ok;
}

/// Minimum Hamming weight over all nonzero codewords of the row space of g.
inline unsigned min_weight(const MatrixF& g) {
  const FieldTower& t = g.tower();
  unsigned best = static_cast<unsigned>(g.cols()) + 1;
  for_each_coeff_vector(t, g.level(), g.rows(), [&](const std::vector<Element>& c) {
    bool nonzero = false;
    for (const auto& x : c) nonzero = nonzero || !x.is_zero();
    if (!nonzero) return;
    unsigned w = 0;
    for (std::size_t j = 0; j < g.cols(); ++j) {
      Element s = t.zero(g.level());
      for (std::size_t r = 0; r < g.rows(); ++r) s = s + c[r] * g.at(r, j);
      if (!s.is_zero()) ++w;
    }
    best = std::min(best, w);
  });
  return best;
}

}  // namespace hmrc::oracle
