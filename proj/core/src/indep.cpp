#include "hmrc/indep.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace hmrc {

std::string_view method_name(IndepMethod m) noexcept { return m == IndepMethod::Bch ? "bch" : "greedy"; }

namespace {

using u128 = unsigned __int128;

// Canonical-rank element for any field, including ones whose order does not
// fit in 64 bits (high digits are then zero).
void element_of_rank(const Field& f, std::uint64_t r, Word* out) {
  if (f.order()) {
    f.from_rank(r, out);
    return;
  }
  const Field& sub = *f.subfield();
  const std::size_t sw = sub.words();
  std::vector<Word> coeffs(f.degree() * sw, 0);
  const auto so = sub.order();
  for (unsigned i = 0; i < f.degree() && r > 0; ++i) {
    const std::uint64_t digit = so ? r % *so : r;
    element_of_rank(sub, digit, coeffs.data() + i * sw);
    r = so ? r / *so : 0;
  }
  f.from_coeffs(coeffs.data(), out);
}

// |F|^t saturating at 2^64.
std::optional<std::uint64_t> power_checked(std::optional<std::uint64_t> base, unsigned t) {
  if (!base) return std::nullopt;
  u128 v = 1;
  for (unsigned i = 0; i < t; ++i) {
    v *= *base;
    if (v > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(v);
}

// Row basis of a coordinate matrix with its columns kept in place.
MatrixF row_basis(const MatrixF& m) {
  std::vector<std::size_t> piv;
  const MatrixF r = rref(m, &piv);
  std::vector<std::size_t> rows(piv.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return r.select_rows(rows);
}

// Primitive elements are only searched when the group order is cheap to factor.
constexpr std::uint64_t kPrimitiveSearchLimit = std::uint64_t{1} << 44;

}  // namespace

IndependentSet bch_parity_columns(const TowerPtr& tower, Level sub, std::size_t n_needed, std::size_t d) {
  if (n_needed < 1) throw Error(Errc::InvalidArgument, "bch_parity_columns needs n_needed >= 1");
  if (d < 2) throw Error(Errc::InvalidArgument, "bch_parity_columns needs d >= 2");
  const FieldPtr& base = tower->field_ptr(sub);
  const auto Q = base->order();

  // smallest t with Q^t - 1 >= n_needed
  unsigned t = 1;
  while (true) {
    const auto qt = power_checked(Q, t);
    if (!qt || *qt - 1 >= n_needed) break;
    ++t;
  }
  FieldPtr ext = base;
  if (t > 1) ext = make_extension(base, smallest_irreducible(*base, t));
  const auto ext_order = power_checked(Q, t);
  const std::size_t bw = base->words(), ew = ext->words();

  // evaluation points: powers of a primitive element, or canonical nonzero
  // elements when the multiplicative group is too large to factor
  std::vector<std::vector<Word>> points(n_needed, std::vector<Word>(ew));
  if (ext_order && *ext_order <= kPrimitiveSearchLimit) {
    const auto gamma = find_primitive(*ext);
    ext->set_one(points[0].data());
    for (std::size_t j = 1; j < n_needed; ++j) ext->mul(points[j - 1].data(), gamma.data(), points[j].data());
  } else {
    for (std::size_t j = 0; j < n_needed; ++j) element_of_rank(*ext, j + 1, points[j].data());
  }

  // exponents whose rows span the same subfield space as an earlier one are skipped
  std::vector<std::size_t> exponents;
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i + 2 <= d; ++i) {
    std::uint64_t rep = i;
    if (ext_order && t > 1) {
      const std::uint64_t N = *ext_order - 1;
      u128 x = i % N;
      for (unsigned e = 0; e < t; ++e) {
        rep = std::min<std::uint64_t>(rep, static_cast<std::uint64_t>(x));
        x = x * *Q % N;
      }
    }
    if (seen.insert(rep).second) exponents.push_back(i);
  }

  MatrixF expanded(tower, sub, exponents.size() * t, n_needed);
  std::vector<Word> pw(ew), coeffs(t * bw);
  for (std::size_t e = 0; e < exponents.size(); ++e) {
    for (std::size_t j = 0; j < n_needed; ++j) {
      ext->pow(points[j].data(), exponents[e], pw.data());
      if (t == 1) {
        std::copy(pw.begin(), pw.end(), expanded.raw(e, j));
      } else {
        ext->to_coeffs(pw.data(), coeffs.data());
        for (unsigned c = 0; c < t; ++c) {
          std::copy(coeffs.begin() + c * bw, coeffs.begin() + (c + 1) * bw, expanded.raw(e * t + c, j));
        }
      }
    }
  }

  IndependentSet out;
  out.coords = row_basis(expanded);
  out.degree = static_cast<unsigned>(out.coords.rows());
  out.kwise = d - 1;
  out.method = IndepMethod::Bch;
  // Any d-1 columns of the exponent rows form a Vandermonde system at
  // distinct nonzero points; the subset check confirms it when affordable.
  if (binomial(n_needed, std::min(out.kwise, n_needed)) > kDefaultSubsetBudget) {
    out.exhaustive = false;
    return out;
  }
  const auto cert = kwise_independent_columns(out.coords, out.kwise);
  if (!cert.independent) {
    throw Error(Errc::VerificationFailed, "BCH columns are not " + std::to_string(out.kwise) + "-wise independent");
  }
  return out;
}

IndependentSet greedy_independent(const TowerPtr& tower, Level sub, std::size_t n_needed, std::size_t k,
                                  unsigned degree_cap) {
  if (k < 1) throw Error(Errc::InvalidArgument, "greedy_independent needs k >= 1");
  const Field& base = tower->field(sub);
  const auto Q = base.order();
  if (!Q) throw Error(Errc::InvalidArgument, "greedy_independent needs a subfield of 64-bit order");
  unsigned start = 1;
  while (true) {
    const auto qd = power_checked(Q, start);
    if (!qd || *qd >= n_needed) break;
    ++start;
  }
  const std::size_t bw = base.words();
  for (unsigned degree = start; degree <= degree_cap; ++degree) {
    const auto total = power_checked(Q, degree);
    MatrixF chosen(tower, sub, degree, 0);
    std::vector<std::vector<Word>> cols;
    for (std::uint64_t r = 1; cols.size() < n_needed && (!total || r < *total); ++r) {
      // candidate vector with little-endian digits of r
      std::vector<Word> v(degree * bw, 0);
      std::uint64_t x = r;
      for (unsigned c = 0; c < degree && x > 0; ++c) {
        base.from_rank(x % *Q, v.data() + c * bw);
        x /= *Q;
      }
      MatrixF cand(tower, sub, degree, cols.size() + 1);
      for (std::size_t j = 0; j <= cols.size(); ++j) {
        const auto& col = j < cols.size() ? cols[j] : v;
        for (unsigned c = 0; c < degree; ++c) std::copy_n(col.data() + c * bw, bw, cand.raw(c, j));
      }
      // only subsets containing the new column need checking
      const std::size_t size = std::min(k, cols.size() + 1);
      bool ok = true;
      for_each_subset(cols.size(), size - 1, [&](std::span<const std::size_t> s) {
        std::vector<std::size_t> idx(s.begin(), s.end());
        idx.push_back(cols.size());
        if (rank(cand.select_columns(idx)) < size) ok = false;
        return ok;
      });
      if (ok) cols.push_back(std::move(v));
    }
    if (cols.size() < n_needed) continue;
    IndependentSet out;
    out.coords = MatrixF(tower, sub, degree, n_needed);
    for (std::size_t j = 0; j < n_needed; ++j) {
      for (unsigned c = 0; c < degree; ++c) std::copy_n(cols[j].data() + c * bw, bw, out.coords.raw(c, j));
    }
    out.degree = degree;
    out.kwise = k;
    out.method = IndepMethod::Greedy;
    if (!kwise_independent_columns(out.coords, k).independent) {
      throw Error(Errc::VerificationFailed, "greedy set failed its own certification");
    }
    return out;
  }
  throw Error(Errc::DegreeCapExceeded, "no " + std::to_string(k) + "-wise independent set of size " +
                                           std::to_string(n_needed) + " up to degree " +
                                           std::to_string(degree_cap));
}

IndependentSet independent_set(const TowerPtr& tower, Level sub, std::size_t n_needed, std::size_t k) {
  try {
    return bch_parity_columns(tower, sub, n_needed, k + 1);
  } catch (const Error& e) {
    if (e.code() != Errc::VerificationFailed) throw;
  }
  // a set of n elements is always n-wise independent at degree n
  return greedy_independent(tower, sub, n_needed, k, static_cast<unsigned>(std::max<std::size_t>(n_needed, 1)));
}

std::vector<Element> embed_columns(const IndependentSet& set, const TowerPtr& target, Level sub, Level level) {
  if (target->degree_over(level, sub) != set.degree) {
    throw Error(Errc::ShapeMismatch, "target level has degree " + std::to_string(target->degree_over(level, sub)) +
                                         ", set needs " + std::to_string(set.degree));
  }
  if (target->field(sub).words() != set.coords.stride()) throw Error(Errc::LevelMismatch, "subfield mismatch");
  std::vector<Element> out;
  out.reserve(set.count());
  for (std::size_t j = 0; j < set.count(); ++j) {
    if (level == sub) {
      out.push_back(target->from_words(sub, {set.coords.raw(0, j), set.coords.stride()}));
      continue;
    }
    std::vector<Element> coords;
    for (unsigned c = 0; c < set.degree; ++c) {
      coords.push_back(target->from_words(sub, {set.coords.raw(c, j), set.coords.stride()}));
    }
    out.push_back(target->recompose(coords, level));
  }
  return out;
}

}  // namespace hmrc
