#include "hmrc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <thread>

namespace hmrc {

namespace {

std::string set_text(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "}";
}

}  // namespace

std::string Certificate::to_string() const {
  if (pass) return "verdict=pass checks=" + std::to_string(checks) + " millis=" + std::to_string(millis);
  return "verdict=fail E=" + set_text(E) + " T=" + set_text(T);
}

bool correctable(const CodeInstance& inst, const IndexSet& erased) {
  if (erased.empty()) return true;
  return rank(restrict(inst.H, erased)) == erased.size();
}

namespace {

struct ChunkResult {
  bool pass = true;
  std::uint64_t fail_index = 0;
  IndexSet E, T;
};

// Row-reduces H so the columns outside E become pivots; the remaining h1 rows
// restricted to E then form a parity check of the punctured code, and every
// h1-subset T of E must give an invertible block.
ChunkResult run_chunk(const MatrixF& H, std::uint32_t k, std::uint32_t h1, const AdmissibleSets& sets,
                      std::uint64_t begin, std::uint64_t end) {
  ChunkResult res;
  const std::uint32_t n = static_cast<std::uint32_t>(H.cols());
  const std::size_t rows = H.rows();
  sets.for_each(begin, end, [&](std::uint64_t index, const IndexSet& E) {
    const IndexSet outside = E.complement(n);
    std::vector<std::size_t> order;
    for (auto c : outside) order.push_back(c - 1);
    for (auto c : E) order.push_back(c - 1);
    std::vector<std::size_t> piv;
    const MatrixF R = rref(H.select_columns(order), &piv);
    const std::size_t nc = outside.size();
    bool outside_ok = rows == nc + h1 && piv.size() >= nc && (nc == 0 || piv[nc - 1] == nc - 1);
    bool ok = true;
    for_each_subset(E.size(), h1, [&](std::span<const std::size_t> t) {
      if (outside_ok) {
        std::vector<std::size_t> cols;
        for (auto x : t) cols.push_back(nc + x);
        std::vector<std::size_t> tail_rows;
        for (std::size_t r = nc; r < rows; ++r) tail_rows.push_back(r);
        if (h1 == 0 || rank(R.select_rows(tail_rows).select_columns(cols)) == h1) return true;
      }
      std::vector<std::uint32_t> tv;
      for (auto x : t) tv.push_back(E[x]);
      res.pass = false;
      res.fail_index = index;
      res.E = E;
      res.T = IndexSet(std::move(tv));
      ok = false;
      return false;
    });
    (void)k;
    return ok;
  });
  return res;
}

}  // namespace

Certificate check_mr(const MatrixF& H, std::uint32_t k, std::uint32_t h1, const AdmissibleSets& sets,
                     unsigned workers) {
  const auto start = std::chrono::steady_clock::now();
  Certificate cert;
  const auto ranges = sets.chunks(workers);
  std::vector<ChunkResult> results(ranges.size());
  if (ranges.size() <= 1) {
    for (std::size_t c = 0; c < ranges.size(); ++c) {
      results[c] = run_chunk(H, k, h1, sets, ranges[c].first, ranges[c].second);
    }
  } else {
    std::vector<std::thread> pool;
    for (std::size_t c = 0; c < ranges.size(); ++c) {
      pool.emplace_back([&, c] { results[c] = run_chunk(H, k, h1, sets, ranges[c].first, ranges[c].second); });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& r : results) {
    if (!r.pass) {
      cert.pass = false;
      cert.E = r.E;
      cert.T = r.T;
      break;
    }
  }
  if (cert.pass) cert.checks = sets.size() * binomial(k + h1, h1);
  cert.millis = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  return cert;
}

Certificate is_mr(const CodeInstance& inst, unsigned workers) {
  const AdmissibleSets sets(inst.params);
  if (inst.H.rows() != inst.dims.n - inst.params.k) {
    Certificate cert;
    cert.pass = false;
    if (sets.size() > 0) cert.E = sets.at(0);
    return cert;
  }
  return check_mr(inst.H, inst.params.k, inst.params.h1, sets, workers);
}

// ---------------------------------------------------------------------------

Encoder make_encoder(const MatrixF& H) {
  Encoder enc;
  enc.G = rref(null_space(H), &enc.info_positions);
  return enc;
}

std::vector<Element> encode(const Encoder& enc, std::span<const Element> data) {
  if (data.size() != enc.G.rows()) throw Error(Errc::ShapeMismatch, "encode expects k data symbols");
  MatrixF row(enc.G.tower_ptr(), enc.G.level(), 1, data.size());
  for (std::size_t j = 0; j < data.size(); ++j) row.set(0, j, data[j]);
  const MatrixF c = row * enc.G;
  std::vector<Element> out;
  for (std::size_t j = 0; j < c.cols(); ++j) out.push_back(c.at(0, j));
  return out;
}

std::vector<Element> recover(const MatrixF& H, const std::vector<std::optional<Element>>& received) {
  if (received.size() != H.cols()) throw Error(Errc::ShapeMismatch, "received word has the wrong length");
  std::vector<std::size_t> erased, known;
  for (std::size_t j = 0; j < received.size(); ++j) (received[j] ? known : erased).push_back(j);
  std::vector<Element> out;
  if (erased.empty()) {
    for (const auto& r : received) out.push_back(H.tower().embed(*r, H.level()));
    return out;
  }
  const MatrixF He = H.select_columns(erased);
  if (rank(He) != erased.size()) throw Error(Errc::NotCorrectable, "erased columns are linearly dependent");
  // He x = -Hk c_k
  MatrixF ck(H.tower_ptr(), H.level(), known.size(), 1);
  for (std::size_t j = 0; j < known.size(); ++j) ck.set(j, 0, -*received[known[j]]);
  MatrixF rhs = known.empty() ? MatrixF(H.tower_ptr(), H.level(), H.rows(), 1) : H.select_columns(known) * ck;
  std::vector<std::size_t> piv;
  const MatrixF R = rref(hstack(He, rhs), &piv);
  // consistency: no pivot in the right-hand column
  if (!piv.empty() && piv.back() == erased.size()) throw Error(Errc::NotCorrectable, "received word is inconsistent");
  out.resize(received.size());
  for (auto j : known) out[j] = H.tower().embed(*received[j], H.level());
  for (std::size_t i = 0; i < erased.size(); ++i) out[erased[i]] = R.at(i, erased.size());
  return out;
}

std::vector<Element> recover(const CodeInstance& inst, const std::vector<std::optional<Element>>& received) {
  return recover(inst.H, received);
}

// ---------------------------------------------------------------------------

namespace {

// Depth-first search over column subsets in lexicographic order, extending an
// incrementally reduced basis; returns true when a dependent set of exactly
// `target` columns exists.
class DependentSearch {
 public:
  DependentSearch(const MatrixF& H) : H_(H), f_(H.field()), w_(f_.words()), rows_(H.rows()) {
    cols_.resize(H.cols(), std::vector<Word>(rows_ * w_));
    for (std::size_t j = 0; j < H.cols(); ++j) {
      for (std::size_t r = 0; r < rows_; ++r) f_.copy(H.raw(r, j), cols_[j].data() + r * w_);
    }
  }

  bool find(unsigned target) {
    target_ = target;
    basis_.clear();
    pivots_.clear();
    return dfs(0, 0);
  }

 private:
  // reduces v against the current basis; returns the pivot row or rows_ if v becomes zero
  std::size_t reduce(std::vector<Word>& v) {
    std::vector<Word> c(w_);
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      const Word* coef = v.data() + pivots_[b] * w_;
      if (f_.is_zero(coef)) continue;
      f_.copy(coef, c.data());
      f_.sub_scaled(v.data(), c.data(), basis_[b].data(), rows_);
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!f_.is_zero(v.data() + r * w_)) return r;
    }
    return rows_;
  }

  bool dfs(std::size_t start, unsigned depth) {
    const std::size_t n = cols_.size();
    for (std::size_t j = start; j + (target_ - depth) <= n; ++j) {
      std::vector<Word> v = cols_[j];
      const std::size_t piv = reduce(v);
      if (piv == rows_) {
        if (depth + 1 == target_) return true;
        continue;  // a smaller dependent set exists; sizes are searched in order
      }
      if (depth + 1 == target_) continue;
      std::vector<Word> inv(w_);
      f_.inv(v.data() + piv * w_, inv.data());
      f_.scale(v.data(), inv.data(), rows_);
      basis_.push_back(std::move(v));
      pivots_.push_back(piv);
      const bool found = dfs(j + 1, depth + 1);
      basis_.pop_back();
      pivots_.pop_back();
      if (found) return true;
    }
    return false;
  }

  const MatrixF& H_;
  const Field& f_;
  std::size_t w_, rows_;
  unsigned target_ = 0;
  std::vector<std::vector<Word>> cols_, basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

std::optional<unsigned> min_distance(const MatrixF& H, unsigned cap) {
  DependentSearch search(H);
  const unsigned limit = std::min<unsigned>(cap, static_cast<unsigned>(H.cols()));
  for (unsigned w = 1; w <= limit; ++w) {
    if (search.find(w)) return w;
  }
  return std::nullopt;
}

std::optional<unsigned> min_distance(const CodeInstance& inst, std::optional<unsigned> cap) {
  return min_distance(inst.H, cap.value_or(inst.dims.n));
}

MatrixF puncture(const MatrixF& H, const IndexSet& coords) {
  const MatrixF G = null_space(H);
  const MatrixF Gp = restrict(G, coords);
  return null_space(Gp);
}

// ---------------------------------------------------------------------------

namespace {

// Admissible stream of a middle code: drop delta coordinates in every local
// group of the puncture, keep the rest (including unconstrained positions).
class MiddleSets {
 public:
  MiddleSets(unsigned t2, unsigned n2, unsigned delta, unsigned extra) : t2_(t2), n2_(n2), extra_(extra) {
    for_each_subset(n2, delta, [&](std::span<const std::size_t> s) {
      drops_.emplace_back(s.begin(), s.end());
      return true;
    });
  }
  std::uint64_t size() const {
    std::uint64_t total = 1;
    for (unsigned s = 0; s < t2_; ++s) total *= drops_.size();
    return total;
  }
  // kept coordinates (1-based, relative to the puncture)
  IndexSet at(std::uint64_t index) const {
    std::vector<std::size_t> digit(t2_);
    for (unsigned s = t2_; s-- > 0;) {
      digit[s] = index % drops_.size();
      index /= drops_.size();
    }
    std::vector<std::uint32_t> keep;
    for (unsigned s = 0; s < t2_; ++s) {
      const auto& drop = drops_[digit[s]];
      for (unsigned j = 0; j < n2_; ++j) {
        if (std::find(drop.begin(), drop.end(), j) == drop.end()) keep.push_back(s * n2_ + j + 1);
      }
    }
    for (unsigned e = 0; e < extra_; ++e) keep.push_back(t2_ * n2_ + e + 1);
    return IndexSet(std::move(keep));
  }

 private:
  unsigned t2_, n2_, extra_;
  std::vector<std::vector<std::size_t>> drops_;
};

// every h-subset T of the kept set: rank(Hp restricted to dropped + T) = rows
bool middle_mds(const MatrixF& Hp, const MiddleSets& sets, unsigned h, std::string& why) {
  const auto n = static_cast<std::uint32_t>(Hp.cols());
  for (std::uint64_t i = 0; i < sets.size(); ++i) {
    const IndexSet keep = sets.at(i);
    const IndexSet drop = keep.complement(n);
    bool ok = true;
    for_each_subset(keep.size(), h, [&](std::span<const std::size_t> t) {
      std::vector<std::uint32_t> cols(drop.begin(), drop.end());
      for (auto x : t) cols.push_back(keep[x]);
      const IndexSet c(std::move(cols));
      if (rank(restrict(Hp, c)) == Hp.rows() && c.size() == Hp.rows()) return true;
      why = "kept set " + set_text(keep) + " fails on " + set_text(c);
      ok = false;
      return false;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace

LocalityReport check_locality(const CodeInstance& inst, LocalityLevel level, unsigned /*workers*/) {
  const CodeParams& p = inst.params;
  const Dims& d = inst.dims;
  LocalityReport rep;
  const MatrixF G = null_space(inst.H);
  auto fail = [&](unsigned group, const std::string& line) {
    rep.lines.push_back(line);
    if (rep.ok) rep.failed_group = group;
    rep.ok = false;
  };
  for (unsigned i = 0; i < d.t1; ++i) {
    const IndexSet& A = inst.groups.A[i];
    const MatrixF Gp = restrict(G, A);
    const std::size_t dim = rank(Gp);
    const MatrixF Hp = null_space(Gp);
    const std::string tag = "A" + std::to_string(i + 1);
    if (level == LocalityLevel::MiddleLocal || level == LocalityLevel::MiddleDataLocal) {
      const bool data_local = level == LocalityLevel::MiddleDataLocal;
      if (data_local != (p.family == Family::HDL)) {
        throw Error(Errc::InvalidArgument, "locality level does not match the code family");
      }
      if (dim != p.r1) {
        fail(i + 1, tag + ": dimension " + std::to_string(dim) + " != r1 = " + std::to_string(p.r1));
        continue;
      }
      const MiddleSets sets(d.t2, d.n2, p.delta, data_local ? p.h2 : 0);
      std::string why;
      if (!middle_mds(Hp, sets, p.h2, why)) {
        fail(i + 1, tag + ": " + why);
        continue;
      }
      const auto dist = min_distance(Hp, d.n1);
      const long expected = data_local ? data_local_mrc_distance(p.h2, p.delta)
                                       : local_mrc_distance(p.h2, p.delta, p.r2);
      rep.lines.push_back(tag + ": [" + std::to_string(d.n1) + "," + std::to_string(dim) + "] " +
                          (data_local ? "data-local" : "local") + " MRC, d=" +
                          (dist ? std::to_string(*dist) : std::string(">n1")) + " expected=" + std::to_string(expected));
      continue;
    }
    // hierarchical: middle code support, distance, and local codes inside it
    const long delta1 = static_cast<long>(p.h2) + p.delta + 1, delta2 = static_cast<long>(p.delta) + 1;
    const auto dist = min_distance(Hp, d.n1);
    if (A.size() > d.n1 || !dist || static_cast<long>(*dist) < delta1) {
      fail(i + 1, tag + ": middle distance " + (dist ? std::to_string(*dist) : std::string("none")) + " < " +
                      std::to_string(delta1));
      continue;
    }
    bool local_ok = true;
    for (unsigned s = 0; s < d.t2; ++s) {
      const MatrixF Hb = puncture(inst.H, inst.groups.B[i][s]);
      const auto db = min_distance(Hb, d.n2);
      if (!db || static_cast<long>(*db) < delta2) {
        fail(i + 1, tag + "/B" + std::to_string(s + 1) + ": local distance " +
                        (db ? std::to_string(*db) : std::string("none")) + " < " + std::to_string(delta2));
        local_ok = false;
        break;
      }
    }
    if (local_ok) {
      rep.lines.push_back(tag + ": support " + std::to_string(A.size()) + ", d=" + std::to_string(*dist) +
                          " >= " + std::to_string(delta1) + ", local codes d >= " + std::to_string(delta2));
    }
  }
  return rep;
}

}  // namespace hmrc
