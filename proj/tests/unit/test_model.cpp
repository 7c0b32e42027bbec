#include <algorithm>
#include <set>

#include "doctest.h"
#include "hmrc/model.hpp"

using namespace hmrc;

namespace {

CodeParams hl(unsigned k, unsigned r1, unsigned r2, unsigned h1, unsigned h2, unsigned delta) {
  return {Family::HL, k, r1, r2, h1, h2, delta};
}
CodeParams hdl(unsigned k, unsigned r1, unsigned r2, unsigned h1, unsigned h2, unsigned delta) {
  return {Family::HDL, k, r1, r2, h1, h2, delta};
}

// Admissible sets straight from the definition: every (k+h1)-subset of [n]
// meeting each mid group in exactly r1 and each local group in at most r2.
std::vector<IndexSet> admissible_oracle(const CodeParams& p) {
  const Dims d = derive_dims(p);
  const GroupStructure g = group_structure(p);
  std::vector<IndexSet> out;
  for_each_subset(d.n, p.k + p.h1, [&](std::span<const std::size_t> idx) {
    std::vector<std::uint32_t> v;
    for (auto i : idx) v.push_back(static_cast<std::uint32_t>(i + 1));
    const IndexSet E(v);
    for (unsigned i = 0; i < d.t1; ++i) {
      if (E.intersect(g.A[i]).size() != p.r1) return true;
      for (unsigned s = 0; s < d.t2; ++s) {
        if (E.intersect(g.B[i][s]).size() > p.r2) return true;
      }
    }
    out.push_back(E);
    return true;
  });
  return out;
}

std::vector<IndexSet> admissible_stream(const CodeParams& p) {
  std::vector<IndexSet> out;
  AdmissibleSets sets(p);
  sets.for_each(0, sets.size(), [&](std::uint64_t, const IndexSet& E) {
    out.push_back(E);
    return true;
  });
  return out;
}

std::vector<CodeParams> small_params(unsigned max_n) { return enumerate_params(max_n); }

}  // namespace

TEST_CASE("dimensions of the worked example") {
  const Dims d = derive_dims(hl(5, 3, 2, 1, 1, 2));
  CHECK(d.t1 == 2);
  CHECK(d.t2 == 2);
  CHECK(d.n1 == 8);
  CHECK(d.n2 == 4);
  CHECK(d.n == 16);
}

TEST_CASE("dimensions of a data-local code") {
  const Dims d = derive_dims(hdl(4, 2, 2, 1, 1, 2));
  CHECK(d.t1 == 2);
  CHECK(d.t2 == 1);
  CHECK(d.n1 == 5);
  CHECK(d.n2 == 4);
  CHECK(d.n == 11);
}

TEST_CASE("no parities gives n = k") {
  CHECK(derive_dims(hl(6, 3, 3, 0, 0, 0)).n == 6);
  CHECK(derive_dims(hdl(6, 3, 3, 0, 0, 0)).n == 6);
}

TEST_CASE("divisibility violations") {
  auto code_of = [](const CodeParams& p) {
    try {
      derive_dims(p);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Io;
  };
  CHECK(code_of(hl(4, 3, 2, 1, 1, 2)) == Errc::DivisibilityViolation);  // r1 does not divide k + h1
  CHECK(code_of(hl(5, 3, 2, 1, 0, 2)) == Errc::DivisibilityViolation);  // r2 does not divide r1 + h2
  CHECK(code_of(hdl(5, 3, 3, 1, 1, 1)) == Errc::DivisibilityViolation);  // r1 does not divide k
  CHECK(code_of(hdl(6, 3, 2, 1, 1, 1)) == Errc::DivisibilityViolation);  // r2 does not divide r1
  CHECK(code_of(hl(0, 1, 1, 1, 1, 1)) == Errc::InvalidArgument);
  CHECK_FALSE(valid_params(hl(4, 3, 2, 1, 1, 2)));
  CHECK(valid_params(hl(5, 3, 2, 1, 1, 2)));
}

TEST_CASE("group layout") {
  const CodeParams p = hdl(4, 2, 2, 1, 1, 2);
  const GroupStructure g = group_structure(p);
  REQUIRE(g.A.size() == 2);
  CHECK(g.A[0] == IndexSet::range(1, 5));
  CHECK(g.B[0][0] == IndexSet::range(1, 4));
  CHECK(g.mid_parities[0] == IndexSet{5});
  CHECK(g.A[1] == IndexSet::range(6, 10));
  CHECK(g.tail == IndexSet{11});

  const GroupStructure h = group_structure(hl(5, 3, 2, 1, 1, 2));
  CHECK(h.tail.empty());
  CHECK(h.B[1][1] == IndexSet::range(13, 16));
}

TEST_CASE("group sizes cover the code") {
  for (const auto& p : small_params(12)) {
    const Dims d = derive_dims(p);
    const GroupStructure g = group_structure(p);
    std::size_t total = 0;
    IndexSet all;
    for (unsigned i = 0; i < d.t1; ++i) {
      CHECK(g.A[i].size() == d.n1);
      total += g.A[i].size();
      all = all.unite(g.A[i]);
      for (const auto& B : g.B[i]) {
        CHECK(B.size() == d.n2);
        CHECK(B.minus(g.A[i]).empty());
      }
    }
    CHECK(total == all.size());
    CHECK(total == (p.family == Family::HL ? d.n : d.n - p.h1));
  }
}

TEST_CASE("admissible sets of the worked example") {
  const CodeParams p = hl(5, 3, 2, 1, 1, 2);
  AdmissibleSets sets(p);
  CHECK(sets.size() == 2304);
  CHECK(sets.choices_per_group() == 48);
  const auto stream = admissible_stream(p);
  const auto expected = admissible_oracle(p);
  CHECK(stream == expected);
}

TEST_CASE("admissible sets agree with the definition on small codes") {
  for (const auto& p : small_params(11)) {
    if (binomial(derive_dims(p).n, p.k + p.h1) > 5000) continue;
    CAPTURE(p.k);
    CAPTURE(p.r1);
    CAPTURE(p.r2);
    CAPTURE(p.h1);
    CAPTURE(p.h2);
    CAPTURE(p.delta);
    const auto stream = admissible_stream(p);
    if (p.family == Family::HL) {
      CHECK(stream == admissible_oracle(p));
    } else {
      // data-local codes: the tail is always included, mid parities are free
      const Dims d = derive_dims(p);
      const GroupStructure g = group_structure(p);
      std::vector<IndexSet> expected;
      for_each_subset(d.n, p.k + p.h1, [&](std::span<const std::size_t> idx) {
        std::vector<std::uint32_t> v;
        for (auto i : idx) v.push_back(static_cast<std::uint32_t>(i + 1));
        const IndexSet E(v);
        for (unsigned i = 0; i < d.t1; ++i) {
          if (E.intersect(g.A[i]).size() != p.r1) return true;
          for (const auto& B : g.B[i]) {
            if (E.intersect(B).size() > p.r2) return true;
          }
        }
        expected.push_back(E);
        return true;
      });
      CHECK(stream == expected);
      for (const auto& E : stream) CHECK(g.tail.minus(E).empty());
    }
  }
}

TEST_CASE("admissible edge cases") {
  // delta = 0: the local constraint is vacuous
  CHECK(AdmissibleSets(hl(2, 2, 2, 0, 2, 0)).size() == binomial(4, 2));
  // one mid group holding exactly k + h1 symbols
  AdmissibleSets one(hl(3, 4, 4, 1, 0, 0));
  CHECK(one.size() == 1);
  CHECK(one.at(0) == IndexSet::range(1, 4));
}

TEST_CASE("random access, chunks and restartable enumeration agree") {
  const CodeParams p = hl(5, 3, 2, 1, 1, 2);
  AdmissibleSets sets(p);
  const auto stream = admissible_stream(p);
  for (std::uint64_t i = 0; i < sets.size(); i += 97) CHECK(sets.at(i) == stream[i]);
  for (unsigned w : {1u, 2u, 3u, 7u, 64u}) {
    const auto chunks = sets.chunks(w);
    CHECK(chunks.size() <= w);
    std::uint64_t next = 0;
    std::vector<IndexSet> joined;
    for (auto [b, e] : chunks) {
      CHECK(b == next);
      next = e;
      sets.for_each(b, e, [&](std::uint64_t idx, const IndexSet& E) {
        CHECK(E == stream[idx]);
        joined.push_back(E);
        return true;
      });
    }
    CHECK(next == sets.size());
    CHECK(joined == stream);
  }
}

TEST_CASE("erasure pattern counts") {
  CHECK(count_patterns(hl(5, 3, 2, 1, 1, 2), false) == 20736);
  std::uint64_t seen = 0;
  for_each_pattern(hl(5, 3, 2, 1, 1, 2), false, [&](const ErasurePattern&) {
    ++seen;
    return true;
  });
  CHECK(seen == 20736);

  std::vector<ErasurePattern> empty;
  for_each_pattern(hl(2, 2, 2, 0, 0, 0), false, [&](const ErasurePattern& pat) {
    empty.push_back(pat);
    return true;
  });
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].footprint(hl(2, 2, 2, 0, 0, 0)).empty());

  // one mid group with one local group: C(4, 2) local choices times 2 mid choices
  const CodeParams single = hl(1, 1, 2, 0, 1, 2);
  REQUIRE(derive_dims(single).t2 == 1);
  CHECK(count_patterns(single, false) == 12);
}

TEST_CASE("pattern validation") {
  const CodeParams p = hl(5, 3, 2, 1, 1, 2);
  ErasurePattern pat;
  pat.delta = {{{1, 2}, {1, 2}}, {{1, 2}, {1, 2}}};
  pat.gamma = {{3}, {3}};
  CHECK_NOTHROW(pat.validate(p));
  CHECK(pat.footprint(p) == IndexSet{1, 2, 3, 5, 6, 9, 10, 11, 13, 14});
  ErasurePattern overlap = pat;
  overlap.gamma = {{1}, {3}};
  CHECK_THROWS_AS(overlap.validate(p), Error);
  ErasurePattern short_local = pat;
  short_local.delta[0][0] = {1};
  CHECK_THROWS_AS(short_local.validate(p), Error);
  ErasurePattern bad_extra = pat;
  bad_extra.extra = IndexSet{1};
  CHECK_THROWS_AS(bad_extra.validate(p), Error);
}

TEST_CASE("pattern footprints are exactly the complements of admissible sets") {
  for (const auto& p : small_params(12)) {
    if (count_patterns(p, true) > 20000 || AdmissibleSets(p).size() > 20000) continue;
    const Dims d = derive_dims(p);
    std::set<IndexSet> complements, extended;
    AdmissibleSets sets(p);
    sets.for_each(0, sets.size(), [&](std::uint64_t, const IndexSet& E) {
      complements.insert(E.complement(d.n));
      return true;
    });
    std::set<IndexSet> footprints;
    for_each_pattern(p, false, [&](const ErasurePattern& pat) {
      footprints.insert(pat.footprint(p));
      return true;
    });
    CHECK(footprints == complements);
    std::uint64_t with_extra = 0;
    for_each_pattern(p, true, [&](const ErasurePattern& pat) {
      ++with_extra;
      extended.insert(pat.footprint(p).unite(pat.extra));
      CHECK(pat.extra.size() == p.h1);
      return true;
    });
    CHECK(with_extra == count_patterns(p, true));
    // erasing an admissible complement plus any h1 more symbols
    std::set<IndexSet> expected;
    for (const auto& c : complements) {
      const IndexSet E = c.complement(d.n);
      for_each_subset(E.size(), p.h1, [&](std::span<const std::size_t> t) {
        std::vector<std::uint32_t> v(c.begin(), c.end());
        for (auto x : t) v.push_back(E[x]);
        expected.insert(IndexSet(v));
        return true;
      });
    }
    CHECK(extended == expected);
  }
}

TEST_CASE("closed-form distances") {
  CHECK(hdl_mrc_distance(1, 1, 2) == 5);
  CHECK(local_mrc_distance(1, 2, 2) == 4);
  CHECK(data_local_mrc_distance(1, 2) == 4);
  CHECK(hier_bound(16, 5, 3, 2, 4, 3) == 7);
  CHECK(rd_bound(16, 5, 2, 3) == 16 - 5 + 1 - 2 * 2);
  CHECK(local_mrc_distance(4, 2, 2) == 4 + 2 + 1 + 2 * 2);
}

TEST_CASE("data-local distance never exceeds the hierarchical bound") {
  for (const auto& p : small_params(30)) {
    if (p.family != Family::HDL) continue;
    CHECK(hdl_mrc_distance(p.h1, p.h2, p.delta) <= hier_bound(p));
  }
}

TEST_CASE("parameter enumeration") {
  const auto all = enumerate_params(8);
  CHECK(std::find(all.begin(), all.end(), CodeParams{Family::HDL, 2, 2, 2, 2, 2, 1}) != all.end());
  CHECK(std::find(all.begin(), all.end(), CodeParams{Family::HL, 1, 1, 1, 1, 0, 1}) != all.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(valid_params(all[i]));
    CHECK(derive_dims(all[i]).n <= 8);
    if (i > 0) CHECK(derive_dims(all[i - 1]).n <= derive_dims(all[i]).n);
  }
  // independent count by scanning a generous box
  std::size_t expected = 0;
  for (auto fam : {Family::HL, Family::HDL}) {
    for (unsigned k = 1; k <= 8; ++k) {
      for (unsigned r1 = 1; r1 <= 9; ++r1) {
        for (unsigned r2 = 1; r2 <= 17; ++r2) {
          for (unsigned h1 = 0; h1 <= 8; ++h1) {
            for (unsigned h2 = 0; h2 <= 8; ++h2) {
              for (unsigned delta = 0; delta <= 8; ++delta) {
                const CodeParams p{fam, k, r1, r2, h1, h2, delta};
                if (valid_params(p) && derive_dims(p).n <= 8) ++expected;
              }
            }
          }
        }
      }
    }
  }
  CHECK(all.size() == expected);
}

TEST_CASE("family names") {
  CHECK(family_name(Family::HL) == "hl");
  CHECK(family_from_name("hdl") == Family::HDL);
  CHECK_THROWS_AS(family_from_name("x"), Error);
}
