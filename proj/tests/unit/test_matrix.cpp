#include <random>

#include "doctest.h"
#include "hmrc/matrix.hpp"

using namespace hmrc;

namespace {

MatrixF from_ranks(const TowerPtr& t, Level lvl, std::vector<std::vector<std::uint64_t>> rows) {
  std::vector<std::vector<Element>> e;
  for (auto& r : rows) {
    e.emplace_back();
    for (auto v : r) e.back().push_back(t->from_rank(lvl, v));
  }
  return MatrixF::from_rows(t, lvl, e);
}

MatrixF random_matrix(const TowerPtr& t, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  MatrixF m(t, Level::Base, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, t->from_rank(Level::Base, rng() % t->q()));
  }
  return m;
}

}  // namespace

TEST_CASE("index sets") {
  IndexSet a{4, 1, 3};
  CHECK(a.values() == std::vector<std::uint32_t>{1, 3, 4});
  CHECK(a.complement(5) == IndexSet{2, 5});
  CHECK(a.unite(IndexSet{2}) == IndexSet::range(1, 4));
  CHECK(a.minus(IndexSet{3}) == IndexSet{1, 4});
  CHECK(a.intersect(IndexSet{3, 4, 5}) == IndexSet{3, 4});
  CHECK_THROWS_AS(IndexSet({0, 1}), Error);
  CHECK_THROWS_AS(IndexSet({2, 2}), Error);
}

TEST_CASE("small rank and inverse facts over GF(5)") {
  auto t = FieldTower::create(5, 1, 1, 1);
  auto id = MatrixF::identity(t, Level::Base, 3);
  CHECK(rank(id) == 3);
  CHECK(inverse(id) == id);
  CHECK(rank(from_ranks(t, Level::Base, {{1, 1}, {2, 2}})) == 1);
  try {
    inverse(from_ranks(t, Level::Base, {{1, 1}, {2, 2}}));
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Singular);
  }
  auto r = rref(from_ranks(t, Level::Base, {{0, 2, 4}, {1, 1, 1}}));
  CHECK(r == from_ranks(t, Level::Base, {{1, 0, 4}, {0, 1, 2}}));
}

TEST_CASE("restrict") {
  auto t = FieldTower::create(5, 1, 1, 1);
  auto m = from_ranks(t, Level::Base, {{1, 2, 3, 4}, {0, 1, 0, 2}});
  CHECK(restrict(m, IndexSet::range(1, 4)) == m);
  CHECK(restrict(m, IndexSet{2, 4}) == from_ranks(t, Level::Base, {{2, 4}, {1, 2}}));
  try {
    restrict(m, IndexSet{5});
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfRange);
  }
}

TEST_CASE("random matrices: rank, inverse, null space") {
  std::mt19937_64 rng(11);
  for (auto [p, s] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    auto t = FieldTower::create(p, s, 1, 1);
    for (int it = 0; it < 150; ++it) {
      const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
      auto m = random_matrix(t, r, c, rng);
      const auto rk = rank(m);
      CHECK(rk == rank(m.transpose()));
      auto ns = null_space(m);
      CHECK(ns.rows() == c - rk);
      if (ns.rows() > 0) {
        CHECK(rank(ns) == ns.rows());
        CHECK((m * ns.transpose()).is_zero());
      }
      if (r == c) {
        if (rk == r) {
          auto inv = inverse(m);
          CHECK(m * inv == MatrixF::identity(t, Level::Base, r));
        } else {
          CHECK_THROWS_AS(inverse(m), Error);
        }
      }
    }
  }
}

TEST_CASE("solve and stacking") {
  std::mt19937_64 rng(5);
  auto t = FieldTower::create(7, 1, 2, 2);
  for (int it = 0; it < 50; ++it) {
    auto a = random_matrix(t, 4, 4, rng);
    if (rank(a) < 4) continue;
    auto b = random_matrix(t, 4, 2, rng);
    CHECK(a * solve(a, b) == b);
  }
  auto a = random_matrix(t, 2, 3, rng), b = random_matrix(t, 2, 1, rng);
  auto h = hstack(a, b);
  CHECK(h.cols() == 4);
  CHECK(h.at(1, 3) == b.at(1, 0));
  auto v = vstack(a, a);
  CHECK(v.rows() == 4);
  CHECK(v.at(3, 2) == a.at(1, 2));
}

TEST_CASE("mixed-level products lift entries") {
  auto t = FieldTower::create(2, 1, 3, 6);
  MatrixF a(t, Level::Base, 1, 1);
  a.set(0, 0, t->one(Level::Base));
  MatrixF b(t, Level::Top, 1, 1);
  auto x = t->from_words(Level::Top, std::vector<Word>(t->field(Level::Top).words(), 0)) + t->one(Level::Top);
  b.set(0, 0, x);
  auto c = a * b;
  CHECK(c.level() == Level::Top);
  CHECK(c.at(0, 0) == x);
}

TEST_CASE("kwise independence examples") {
  auto t = FieldTower::create(2, 1, 2, 2);
  std::vector<Element> s{t->from_rank(Level::Mid, 1), t->from_rank(Level::Mid, 2), t->from_rank(Level::Mid, 3)};
  CHECK(kwise_independent(s, 2, Level::Base).independent);
  auto r = kwise_independent(s, 3, Level::Base);
  CHECK_FALSE(r.independent);
  CHECK(r.witness == IndexSet{1, 2, 3});
  std::vector<Element> with_zero{t->from_rank(Level::Mid, 2), t->zero(Level::Mid)};
  auto z = kwise_independent(with_zero, 1, Level::Base);
  CHECK_FALSE(z.independent);
  CHECK(z.witness == IndexSet{2});
  std::vector<Element> many;
  for (int i = 0; i < 60; ++i) many.push_back(t->one(Level::Mid));
  try {
    kwise_independent(many, 30, Level::Base);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
}

TEST_CASE("kwise independence is monotone in k") {
  std::mt19937_64 rng(3);
  auto t = FieldTower::create(2, 1, 4, 4);
  for (int it = 0; it < 100; ++it) {
    std::vector<Element> s;
    const std::size_t n = 2 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) s.push_back(t->from_rank(Level::Mid, rng() % 16));
    for (std::size_t k = 1; k <= n; ++k) {
      if (!kwise_independent(s, k, Level::Base).independent) continue;
      for (std::size_t j = 1; j < k; ++j) CHECK(kwise_independent(s, j, Level::Base).independent);
    }
  }
}

TEST_CASE("subset enumeration and binomials") {
  std::size_t count = 0;
  std::vector<std::size_t> first, last;
  for_each_subset(6, 3, [&](std::span<const std::size_t> s) {
    if (count == 0) first.assign(s.begin(), s.end());
    last.assign(s.begin(), s.end());
    ++count;
    return true;
  });
  CHECK(count == 20);
  CHECK(first == std::vector<std::size_t>{0, 1, 2});
  CHECK(last == std::vector<std::size_t>{3, 4, 5});
  CHECK(binomial(52, 5) == 2598960);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(200, 100) == UINT64_MAX);
}
