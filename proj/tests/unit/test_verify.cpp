#include <random>

#include "doctest.h"
#include "hmrc/verify.hpp"
#include "support/oracles.hpp"

using namespace hmrc;

namespace {

CodeParams hl(unsigned k, unsigned r1, unsigned r2, unsigned h1, unsigned h2, unsigned delta) {
  return {Family::HL, k, r1, r2, h1, h2, delta};
}

const CodeParams kExample{Family::HL, 5, 3, 2, 1, 1, 2};

const CodeInstance& example_single() {
  static const CodeInstance inst = construct(kExample, {.single_global = true});
  return inst;
}

Element random_element(const FieldTower& t, Level level, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, *t.field(level).order() - 1);
  return t.from_rank(level, pick(rng));
}

// Smallest w such that some w columns admit an all-nonzero vanishing combination.
unsigned dependent_columns_oracle(const MatrixF& H) {
  const FieldTower& t = H.tower();
  const std::uint64_t q = *t.field(H.level()).order();
  for (unsigned w = 1; w <= H.cols(); ++w) {
    bool found = false;
    for_each_subset(H.cols(), w, [&](std::span<const std::size_t> cols) {
      std::vector<std::uint64_t> digits(w, 1);
      while (!found) {
        bool zero = true;
        for (std::size_t r = 0; r < H.rows() && zero; ++r) {
          Element s = t.zero(H.level());
          for (unsigned j = 0; j < w; ++j) s = s + t.from_rank(H.level(), digits[j]) * H.at(r, cols[j]);
          zero = s.is_zero();
        }
        if (zero) found = true;
        unsigned j = 0;
        while (j < w && ++digits[j] == q) digits[j++] = 1;
        if (j == w) break;
      }
      return !found;
    });
    if (found) return w;
  }
  return static_cast<unsigned>(H.cols()) + 1;
}

MatrixF zero_entries(MatrixF H, std::size_t row, std::size_t c0, std::size_t c1) {
  const Element z = H.tower().zero(H.level());
  for (std::size_t c = c0; c < c1; ++c) H.set(row, c, z);
  return H;
}

CodeInstance with_matrix(const CodeInstance& base, MatrixF H) {
  CodeInstance inst = base;
  inst.H = std::move(H);
  return inst;
}

}  // namespace

TEST_CASE("correctable erasure sets") {
  const CodeInstance& inst = example_single();
  CHECK(correctable(inst, {}));
  for (std::uint32_t c = 1; c <= 16; ++c) CHECK(correctable(inst, {c}));
  for (const auto& row : inst.groups.B) {
    for (const auto& B : row) {
      for_each_subset(B.size(), 2, [&](std::span<const std::size_t> s) {
        CHECK(correctable(inst, {B[s[0]], B[s[1]]}));
        return true;
      });
    }
  }
  CHECK_FALSE(correctable(inst, IndexSet::range(1, 12)));
}

TEST_CASE("worked example is maximally recoverable") {
  const CodeInstance& inst = example_single();
  const Certificate c = is_mr(inst);
  CHECK(c.pass);
  CHECK(c.checks == 2304 * 6);
  for (unsigned w : {2u, 3u, 8u}) {
    const Certificate cw = is_mr(inst, w);
    CHECK(cw.pass);
    CHECK(cw.checks == c.checks);
  }
  CHECK(c.to_string().rfind("verdict=pass checks=13824 millis=", 0) == 0);
}

TEST_CASE("zeroed global strip fails inside its group") {
  const CodeInstance& good = example_single();
  const CodeInstance bad = with_matrix(good, zero_entries(good.H, 10, 0, 8));
  const Certificate c = is_mr(bad);
  REQUIRE_FALSE(c.pass);
  CHECK(c.T.size() == 1);
  CHECK_FALSE(c.T.intersect(good.groups.A[0]).empty());
  for (unsigned w : {2u, 5u, 16u}) {
    const Certificate cw = is_mr(bad, w);
    CHECK_FALSE(cw.pass);
    CHECK(cw.E == c.E);
    CHECK(cw.T == c.T);
  }
  CHECK(c.to_string().rfind("verdict=fail E=", 0) == 0);
}

TEST_CASE("any zeroed parity row breaks maximal recoverability") {
  const CodeInstance& good = example_single();
  for (std::size_t r = 0; r < good.H.rows(); ++r) {
    const CodeInstance bad = with_matrix(good, zero_entries(good.H, r, 0, good.H.cols()));
    CHECK_FALSE(is_mr(bad).pass);
  }
  const std::vector<std::size_t> fewer{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK_FALSE(is_mr(with_matrix(good, good.H.select_rows(fewer))).pass);
}

TEST_CASE("trivial instance passes") {
  const CodeInstance inst = construct(hl(2, 2, 2, 0, 0, 0));
  CHECK(inst.H.rows() == 0);
  const Certificate c = is_mr(inst);
  CHECK(c.pass);
  CHECK(c.checks == 1);
}

TEST_CASE("admissible complements plus any global erasures are correctable") {
  for (const CodeParams& p : {kExample, hl(3, 2, 3, 1, 1, 0), hl(4, 2, 3, 0, 1, 1), hl(2, 3, 2, 1, 1, 1)}) {
    for (bool single : {false, true}) {
      if (single && p.h1 != 1) continue;
      const CodeInstance inst = construct(p, {.single_global = single});
      REQUIRE(is_mr(inst).pass);
      std::uint64_t bad = 0;
      for_each_pattern(p, true, [&](const ErasurePattern& pat) {
        if (!correctable(inst, pat.footprint(p))) ++bad;
        return true;
      });
      CHECK(bad == 0);
    }
  }
}

TEST_CASE("minimum distance against brute force") {
  std::mt19937_64 rng(99);
  for (auto [p, deg] : {std::pair{3ull, 1u}, std::pair{2ull, 2u}}) {
    auto t = FieldTower::create(p, 1, deg, deg);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t rows = 2 + trial % 3, cols = 5 + trial % 3;
      MatrixF H(t, Level::Mid, rows, cols);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) H.set(r, c, random_element(*t, Level::Mid, rng));
      }
      const unsigned want = dependent_columns_oracle(H);
      const auto got = min_distance(H, static_cast<unsigned>(cols) + 1);
      REQUIRE(got.has_value());
      CHECK(*got == want);
      if (rank(H) < rows) continue;
      const MatrixF G = null_space(H);
      if (G.rows() > 0) CHECK(oracle::min_weight(G) == want);
    }
  }
  auto t = FieldTower::create(2, 1, 1, 1);
  const MatrixF rep = MatrixF::from_rows(t, Level::Base, {{t->one(Level::Base), t->one(Level::Base)}});
  CHECK(min_distance(rep, 2) == 2u);
  CHECK_FALSE(min_distance(rep, 1).has_value());
}

TEST_CASE("distances of the worked example") {
  const CodeInstance& inst = example_single();
  CHECK(min_distance(inst) == 7u);
  CHECK(hier_bound(kExample) == 7);
  for (const auto& A : inst.groups.A) {
    const MatrixF mid = puncture(inst.H, A);
    CHECK(mid.cols() == 8);
    CHECK(mid.rows() == 8 - 3);
    CHECK(min_distance(mid, 8) == static_cast<unsigned>(local_mrc_distance(1, 2, 2)));
  }
}

TEST_CASE("middle distances match the closed form on small passing codes") {
  for (const CodeParams& p : {kExample, hl(3, 2, 3, 1, 1, 0), hl(4, 2, 3, 0, 1, 1), hl(4, 2, 2, 2, 2, 1)}) {
    const CodeInstance inst = construct(p);
    if (inst.dims.n > 20) continue;
    REQUIRE(is_mr(inst).pass);
    for (const auto& A : inst.groups.A) {
      CHECK(min_distance(puncture(inst.H, A), inst.dims.n1) ==
            static_cast<unsigned>(local_mrc_distance(p.h2, p.delta, p.r2)));
    }
  }
}

TEST_CASE("encode, erase and recover round trips") {
  const CodeInstance& inst = example_single();
  const Encoder enc = make_encoder(inst.H);
  CHECK(enc.G.rows() == 5);
  CHECK((enc.G * inst.H.transpose()).is_zero());
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<unsigned> size(0, 6);
  int done = 0;
  while (done < 500) {
    std::vector<Element> data;
    for (int j = 0; j < 5; ++j) data.push_back(random_element(*inst.tower, Level::Top, rng));
    const auto word = encode(enc, data);
    std::vector<std::uint32_t> all(16);
    for (std::uint32_t c = 0; c < 16; ++c) all[c] = c + 1;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size(rng) + (done % 6));
    const IndexSet erased(all);
    if (!correctable(inst, erased)) continue;
    std::vector<std::optional<Element>> received(word.begin(), word.end());
    for (auto c : erased) received[c - 1].reset();
    CHECK(recover(inst, received) == word);
    ++done;
  }
}

TEST_CASE("recovery inside one mid group and failure cases") {
  const CodeInstance& inst = example_single();
  const Encoder enc = make_encoder(inst.H);
  std::vector<Element> data;
  for (int j = 0; j < 5; ++j) data.push_back(inst.tower->from_rank(Level::Top, 1000 + 37 * j));
  const auto word = encode(enc, data);
  for_each_subset(8, 4, [&](std::span<const std::size_t> s) {
    std::vector<std::optional<Element>> received(word.begin(), word.end());
    for (auto c : s) received[c].reset();
    CHECK(recover(inst, received) == word);
    return true;
  });
  std::vector<std::optional<Element>> none(word.begin(), word.end());
  CHECK(recover(inst, none) == word);

  std::vector<std::optional<Element>> too_many(word.begin(), word.end());
  for (int c = 0; c < 12; ++c) too_many[c].reset();
  CHECK_THROWS_AS(recover(inst, too_many), Error);
  try {
    recover(inst, too_many);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotCorrectable);
  }
}

TEST_CASE("locality checks") {
  const CodeInstance& inst = example_single();
  const LocalityReport mid = check_locality(inst, LocalityLevel::MiddleLocal);
  CHECK(mid.ok);
  CHECK_FALSE(mid.failed_group.has_value());
  CHECK(check_locality(inst, LocalityLevel::Hierarchical).ok);
  CHECK_THROWS_AS(check_locality(inst, LocalityLevel::MiddleDataLocal), Error);

  // second mid group, first local group: second local column becomes a copy of the first
  const CodeInstance bad = with_matrix(inst, zero_entries(inst.H, 6, 9, 10));
  const LocalityReport broken = check_locality(bad, LocalityLevel::MiddleLocal);
  CHECK_FALSE(broken.ok);
  CHECK(broken.failed_group == 2u);
  CHECK_FALSE(check_locality(bad, LocalityLevel::Hierarchical).ok);

  const CodeInstance plain = construct(hl(2, 2, 2, 0, 0, 0));
  CHECK(check_locality(plain, LocalityLevel::MiddleLocal).ok);
}
