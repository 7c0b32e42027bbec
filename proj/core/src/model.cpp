#include "hmrc/model.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <tuple>

namespace hmrc {

std::string_view family_name(Family f) noexcept { return f == Family::HL ? "hl" : "hdl"; }

Family family_from_name(std::string_view name) {
  if (name == "hl") return Family::HL;
  if (name == "hdl") return Family::HDL;
  throw Error(Errc::InvalidArgument, "unknown family '" + std::string(name) + "'");
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) noexcept { return (a + b - 1) / b; }

Dims derive_dims(const CodeParams& p) {
  if (p.k == 0 || p.r1 == 0 || p.r2 == 0) throw Error(Errc::InvalidArgument, "k, r1 and r2 must be positive");
  Dims d;
  d.n2 = p.r2 + p.delta;
  if (p.family == Family::HL) {
    if ((p.k + p.h1) % p.r1 != 0) throw Error(Errc::DivisibilityViolation, "r1 must divide k + h1");
    if ((p.r1 + p.h2) % p.r2 != 0) throw Error(Errc::DivisibilityViolation, "r2 must divide r1 + h2");
    d.t1 = (p.k + p.h1) / p.r1;
    d.t2 = (p.r1 + p.h2) / p.r2;
  } else {
    if (p.k % p.r1 != 0) throw Error(Errc::DivisibilityViolation, "r1 must divide k");
    if (p.r1 % p.r2 != 0) throw Error(Errc::DivisibilityViolation, "r2 must divide r1");
    d.t1 = p.k / p.r1;
    d.t2 = p.r1 / p.r2;
  }
  d.n1 = p.r1 + p.h2 + d.t2 * p.delta;
  d.n = p.k + p.h1 + d.t1 * (p.h2 + d.t2 * p.delta);
  return d;
}

bool valid_params(const CodeParams& p) noexcept {
  try {
    derive_dims(p);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<CodeParams> enumerate_params(unsigned max_n) {
  std::vector<std::pair<unsigned, CodeParams>> found;
  auto divisors = [](unsigned v) {
    std::vector<unsigned> out;
    for (unsigned x = 1; x <= v; ++x) {
      if (v % x == 0) out.push_back(x);
    }
    return out;
  };
  auto keep = [&](const CodeParams& p) {
    if (!valid_params(p)) return;
    const unsigned n = derive_dims(p).n;
    if (n <= max_n) found.emplace_back(n, p);
  };
  // both families have n >= k + h1 + h2 + delta
  for (unsigned k = 1; k <= max_n; ++k) {
    for (unsigned h1 = 0; k + h1 <= max_n; ++h1) {
      for (unsigned h2 = 0; k + h1 + h2 <= max_n; ++h2) {
        for (unsigned delta = 0; k + h1 + h2 + delta <= max_n; ++delta) {
          for (unsigned r1 : divisors(k + h1)) {
            for (unsigned r2 : divisors(r1 + h2)) keep({Family::HL, k, r1, r2, h1, h2, delta});
          }
          for (unsigned r1 : divisors(k)) {
            for (unsigned r2 : divisors(r1)) keep({Family::HDL, k, r1, r2, h1, h2, delta});
          }
        }
      }
    }
  }
  auto key = [](const std::pair<unsigned, CodeParams>& e) {
    const CodeParams& p = e.second;
    return std::tuple(e.first, p.family, p.k, p.r1, p.r2, p.h1, p.h2, p.delta);
  };
  std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  std::vector<CodeParams> out;
  for (const auto& e : found) out.push_back(e.second);
  return out;
}

GroupStructure group_structure(const CodeParams& p) {
  const Dims d = derive_dims(p);
  GroupStructure g;
  for (unsigned i = 0; i < d.t1; ++i) {
    const unsigned first = i * d.n1 + 1;
    g.A.push_back(IndexSet::range(first, first + d.n1 - 1));
    g.B.emplace_back();
    for (unsigned s = 0; s < d.t2; ++s) {
      const unsigned b = first + s * d.n2;
      g.B.back().push_back(IndexSet::range(b, b + d.n2 - 1));
    }
    if (p.family == Family::HDL && p.h2 > 0) {
      const unsigned m = first + d.t2 * d.n2;
      g.mid_parities.push_back(IndexSet::range(m, m + p.h2 - 1));
    } else {
      g.mid_parities.emplace_back();
    }
  }
  if (p.family == Family::HDL && p.h1 > 0) g.tail = IndexSet::range(d.n - p.h1 + 1, d.n);
  return g;
}

// ---------------------------------------------------------------------------

AdmissibleSets::AdmissibleSets(const CodeParams& p)
    : params_(p), dims_(derive_dims(p)), groups_(group_structure(p)) {
  // local group of each offset inside A_i (t2 means "mid parity")
  std::vector<unsigned> block(dims_.n1);
  for (unsigned o = 0; o < dims_.n1; ++o) block[o] = std::min(o / dims_.n2, dims_.t2);
  for_each_subset(dims_.n1, p.r1, [&](std::span<const std::size_t> s) {
    std::vector<unsigned> per(dims_.t2 + 1, 0);
    for (auto o : s) ++per[block[o]];
    for (unsigned b = 0; b < dims_.t2; ++b) {
      if (per[b] > p.r2) return true;
    }
    choices_.emplace_back(s.begin(), s.end());
    return true;
  });
  unsigned __int128 total = dims_.t1 == 0 ? 0 : 1;
  for (unsigned i = 0; i < dims_.t1; ++i) {
    total *= choices_.size();
    if (total > std::numeric_limits<std::uint64_t>::max()) {
      total = std::numeric_limits<std::uint64_t>::max();
      break;
    }
  }
  size_ = static_cast<std::uint64_t>(total);
}

IndexSet AdmissibleSets::at(std::uint64_t index) const {
  if (index >= size_) throw Error(Errc::IndexOutOfRange, "admissible set index out of range");
  std::vector<std::uint32_t> coords;
  coords.reserve(params_.k + params_.h1);
  std::vector<std::size_t> digit(dims_.t1);
  const std::size_t L = choices_.size();
  for (unsigned i = dims_.t1; i-- > 0;) {
    digit[i] = index % L;
    index /= L;
  }
  for (unsigned i = 0; i < dims_.t1; ++i) {
    const std::uint32_t base = i * dims_.n1 + 1;
    for (auto o : choices_[digit[i]]) coords.push_back(base + o);
  }
  for (auto c : groups_.tail) coords.push_back(c);
  return IndexSet(std::move(coords));
}

void AdmissibleSets::for_each(std::uint64_t begin, std::uint64_t end,
                              const std::function<bool(std::uint64_t, const IndexSet&)>& fn) const {
  end = std::min(end, size_);
  for (std::uint64_t i = begin; i < end; ++i) {
    if (!fn(i, at(i))) return;
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> AdmissibleSets::chunks(unsigned workers) const {
  workers = std::max(1u, workers);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const std::uint64_t per = size_ / workers, extra = size_ % workers;
  std::uint64_t at = 0;
  for (unsigned w = 0; w < workers && at < size_; ++w) {
    const std::uint64_t len = per + (w < extra ? 1 : 0);
    if (len == 0) continue;
    out.emplace_back(at, at + len);
    at += len;
  }
  return out;
}

// ---------------------------------------------------------------------------

IndexSet ErasurePattern::footprint(const CodeParams& p) const {
  const Dims d = derive_dims(p);
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const std::uint32_t base = static_cast<std::uint32_t>(i) * d.n1;
    for (std::size_t s = 0; s < delta[i].size(); ++s) {
      for (auto j : delta[i][s]) out.push_back(base + static_cast<std::uint32_t>(s) * d.n2 + j);
    }
  }
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    for (auto j : gamma[i]) out.push_back(static_cast<std::uint32_t>(i) * d.n1 + j);
  }
  for (auto c : extra) out.push_back(c);
  return IndexSet(std::move(out));
}

void ErasurePattern::validate(const CodeParams& p) const {
  const Dims d = derive_dims(p);
  auto fail = [](const std::string& why) { throw Error(Errc::InvalidArgument, "erasure pattern: " + why); };
  if (delta.size() != d.t1 || gamma.size() != d.t1) fail("expected one entry per mid group");
  for (unsigned i = 0; i < d.t1; ++i) {
    if (delta[i].size() != d.t2) fail("expected one local entry per local group");
    std::vector<bool> used(d.n1 + 1, false);
    for (unsigned s = 0; s < d.t2; ++s) {
      if (delta[i][s].size() != p.delta) fail("local entries must have delta positions");
      for (auto j : delta[i][s]) {
        if (j < 1 || j > d.n2) fail("local position out of range");
        const unsigned pos = s * d.n2 + j;
        if (used[pos]) fail("repeated local position");
        used[pos] = true;
      }
    }
    if (gamma[i].size() != p.h2) fail("mid entries must have h2 positions");
    for (auto j : gamma[i]) {
      if (j < 1 || j > d.n1) fail("mid position out of range");
      if (used[j]) fail("mid position overlaps a local erasure or repeats");
      used[j] = true;
    }
  }
  if (extra.size() > p.h1) fail("more than h1 extra erasures");
  ErasurePattern base = *this;
  base.extra = {};
  const IndexSet fp = base.footprint(p);
  if (!fp.intersect(extra).empty()) fail("extra erasures overlap the pattern");
  if (!extra.empty() && extra.values().back() > d.n) fail("extra coordinate out of range");
}

namespace {

struct GroupChoice {
  std::vector<std::vector<std::uint32_t>> delta;  // t2 lists
  std::vector<std::uint32_t> gamma;
};

std::vector<GroupChoice> group_choices(const CodeParams& p, const Dims& d) {
  std::vector<std::vector<std::uint32_t>> local;
  for_each_subset(d.n2, p.delta, [&](std::span<const std::size_t> s) {
    std::vector<std::uint32_t> v;
    for (auto x : s) v.push_back(static_cast<std::uint32_t>(x + 1));
    local.push_back(std::move(v));
    return true;
  });
  std::vector<GroupChoice> out;
  std::vector<std::size_t> idx(d.t2, 0);
  while (true) {
    GroupChoice g;
    std::vector<bool> used(d.n1 + 1, false);
    for (unsigned s = 0; s < d.t2; ++s) {
      g.delta.push_back(local[idx[s]]);
      for (auto j : local[idx[s]]) used[s * d.n2 + j] = true;
    }
    std::vector<std::uint32_t> free;
    for (unsigned pos = 1; pos <= d.n1; ++pos) {
      if (!used[pos]) free.push_back(pos);
    }
    for_each_subset(free.size(), p.h2, [&](std::span<const std::size_t> s) {
      GroupChoice c = g;
      for (auto x : s) c.gamma.push_back(free[x]);
      out.push_back(std::move(c));
      return true;
    });
    // odometer over local choices, last local group fastest
    std::size_t s = d.t2;
    while (s > 0 && idx[s - 1] + 1 == local.size()) idx[--s] = 0;
    if (s == 0) break;
    ++idx[s - 1];
  }
  return out;
}

}  // namespace

void for_each_pattern(const CodeParams& p, bool with_extra, const std::function<bool(const ErasurePattern&)>& fn) {
  const Dims d = derive_dims(p);
  const auto choices = group_choices(p, d);
  if (choices.empty()) return;
  std::vector<std::size_t> idx(d.t1, 0);
  while (true) {
    ErasurePattern pat;
    for (unsigned i = 0; i < d.t1; ++i) {
      pat.delta.push_back(choices[idx[i]].delta);
      pat.gamma.push_back(choices[idx[i]].gamma);
    }
    if (!with_extra || p.h1 == 0) {
      if (!fn(pat)) return;
    } else {
      const IndexSet rest = pat.footprint(p).complement(d.n);
      bool go = true;
      for_each_subset(rest.size(), p.h1, [&](std::span<const std::size_t> s) {
        std::vector<std::uint32_t> x;
        for (auto e : s) x.push_back(rest[e]);
        pat.extra = IndexSet(std::move(x));
        go = fn(pat);
        return go;
      });
      if (!go) return;
    }
    std::size_t i = d.t1;
    while (i > 0 && idx[i - 1] + 1 == choices.size()) idx[--i] = 0;
    if (i == 0) return;
    ++idx[i - 1];
  }
}

std::uint64_t count_patterns(const CodeParams& p, bool with_extra) {
  const Dims d = derive_dims(p);
  const std::uint64_t per_group = static_cast<std::uint64_t>(group_choices(p, d).size());
  unsigned __int128 total = 1;
  for (unsigned i = 0; i < d.t1; ++i) total *= per_group;
  if (with_extra) total *= binomial(d.n - d.t1 * (d.t2 * p.delta + p.h2), p.h1);
  if (total > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(total);
}

// ---------------------------------------------------------------------------

long rd_bound(long n, long k, long r, long delta) {
  return n - k + 1 - (static_cast<long>(ceil_div(k, r)) - 1) * (delta - 1);
}

long local_mrc_distance(long h, long delta, long r) { return h + delta + 1 + (h / r) * delta; }

long data_local_mrc_distance(long h, long delta) { return h + delta + 1; }

long hier_bound(long n, long k, long r1, long r2, long delta1, long delta2) {
  return n - k + 1 - (static_cast<long>(ceil_div(k, r2)) - 1) * (delta2 - 1) -
         (static_cast<long>(ceil_div(k, r1)) - 1) * (delta1 - delta2);
}

long hdl_mrc_distance(long h1, long h2, long delta) { return h1 + h2 + delta + 1; }

long hier_bound(const CodeParams& p) {
  const Dims d = derive_dims(p);
  return hier_bound(d.n, p.k, p.r1, p.r2, static_cast<long>(p.h2) + p.delta + 1, static_cast<long>(p.delta) + 1);
}

}  // namespace hmrc
