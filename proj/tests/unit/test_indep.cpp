#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "hmrc/indep.hpp"
#include "support/oracles.hpp"

using namespace hmrc;

namespace {

std::vector<Element> as_elements(const IndependentSet& set, std::uint64_t p, unsigned s) {
  auto t = FieldTower::create(p, s, set.degree, set.degree);
  return embed_columns(set, t, Level::Base, Level::Mid);
}

// smallest m such that some n vectors of F_2^m are k-wise independent
unsigned minimal_binary_degree(std::size_t n, std::size_t k) {
  for (unsigned m = 1;; ++m) {
    const std::size_t nonzero = (std::size_t{1} << m) - 1;
    bool found = false;
    for_each_subset(nonzero, n, [&](std::span<const std::size_t> pick) {
      std::vector<unsigned> v;
      for (auto x : pick) v.push_back(static_cast<unsigned>(x + 1));
      bool ok = true;
      for_each_subset(v.size(), std::min(k, v.size()), [&](std::span<const std::size_t> sub) {
        // dependent iff some nonempty sub-subset xors to zero
        const std::size_t sz = sub.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << sz) && ok; ++mask) {
          unsigned x = 0;
          for (std::size_t b = 0; b < sz; ++b) {
            if (mask >> b & 1) x ^= v[sub[b]];
          }
          if (x == 0) ok = false;
        }
        return ok;
      });
      found = ok;
      return !found;
    });
    if (found) return m;
  }
}

}  // namespace

TEST_CASE("bch columns: nonzero elements for d = 2") {
  auto base = FieldTower::create(2, 1, 1, 1);
  auto set = bch_parity_columns(base, Level::Base, 3, 2);
  CHECK(set.count() == 3);
  CHECK(set.kwise == 1);
  // only the exponent-0 row remains, so every column is the all-ones vector
  CHECK(set.degree == 1);
  for (const auto& e : as_elements(set, 2, 1)) CHECK(e.is_one());
}

TEST_CASE("bch columns over GF(5): eight elements, 3-wise independent") {
  auto base = FieldTower::create(5, 1, 1, 1);
  auto set = bch_parity_columns(base, Level::Base, 8, 4);
  REQUIRE(set.count() == 8);
  CHECK(set.method == IndepMethod::Bch);
  const auto elems = as_elements(set, 5, 1);
  CHECK(oracle::kwise(elems, 3, Level::Base));
  CHECK(kwise_independent(elems, 3, Level::Base).independent);
}

TEST_CASE("bch columns for q = 2, seven elements, pairwise independent") {
  auto base = FieldTower::create(2, 1, 1, 1);
  auto set = bch_parity_columns(base, Level::Base, 7, 3);
  REQUIRE(set.count() == 7);
  const auto elems = as_elements(set, 2, 1);
  CHECK(oracle::kwise(elems, 2, Level::Base));
  // the all-ones row is kept alongside one row per cyclotomic coset
  CHECK(set.degree == 4);
}

TEST_CASE("bch columns over a non-prime base field") {
  auto base = FieldTower::create(2, 2, 1, 1);
  auto set = bch_parity_columns(base, Level::Base, 6, 4);
  auto t = FieldTower::create(2, 2, set.degree, set.degree);
  const auto elems = embed_columns(set, t, Level::Base, Level::Mid);
  CHECK(oracle::kwise(elems, 3, Level::Base));
}

TEST_CASE("greedy: degree one when the base field suffices") {
  auto base = FieldTower::create(5, 1, 1, 1);
  auto set = greedy_independent(base, Level::Base, 4, 1, 8);
  CHECK(set.degree == 1);
  CHECK(set.method == IndepMethod::Greedy);
  std::set<std::uint64_t> ranks;
  for (const auto& e : as_elements(set, 5, 1)) ranks.insert(e.rank());
  CHECK(ranks == std::set<std::uint64_t>{1, 2, 3, 4});
}

TEST_CASE("greedy: three independent binary vectors need degree 3") {
  auto base = FieldTower::create(2, 1, 1, 1);
  auto set = greedy_independent(base, Level::Base, 3, 3, 8);
  CHECK(set.degree == 3);
  const auto elems = as_elements(set, 2, 1);
  CHECK(oracle::kwise(elems, 3, Level::Base));
  CHECK(elems[0].rank() == 1);
  CHECK(elems[1].rank() == 2);
  CHECK(elems[2].rank() == 4);
}

TEST_CASE("greedy: four pairwise independent binary vectors need degree 3") {
  auto base = FieldTower::create(2, 1, 1, 1);
  auto set = greedy_independent(base, Level::Base, 4, 2, 8);
  CHECK(set.degree == 3);
  CHECK(oracle::kwise(as_elements(set, 2, 1), 2, Level::Base));
}

TEST_CASE("greedy: degree cap") {
  auto base = FieldTower::create(2, 1, 1, 1);
  try {
    greedy_independent(base, Level::Base, 5, 5, 4);
    FAIL("expected DegreeCapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegreeCapExceeded);
  }
}

TEST_CASE("greedy degree matches the brute-force minimum for q = 2") {
  auto base = FieldTower::create(2, 1, 1, 1);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t k = 1; k <= 3; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      auto set = greedy_independent(base, Level::Base, n, k, 10);
      CHECK(set.degree == minimal_binary_degree(n, k));
      CHECK(oracle::kwise(as_elements(set, 2, 1), k, Level::Base));
    }
  }
}

TEST_CASE("independent_set is deterministic and certified") {
  for (auto [p, s] : {std::pair<std::uint64_t, unsigned>{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    auto base = FieldTower::create(p, s, 1, 1);
    for (std::size_t n : {3u, 6u, 9u}) {
      for (std::size_t k : {1u, 2u, 3u}) {
        auto a = independent_set(base, Level::Base, n, k);
        auto b = independent_set(base, Level::Base, n, k);
        CHECK(a.coords == b.coords);
        CHECK(a.degree == b.degree);
        CHECK(kwise_independent_columns(a.coords, k).independent);
        CHECK(a.kwise >= k);
      }
    }
  }
}

TEST_CASE("independent sets over the mid level of a tower") {
  auto tower = FieldTower::create(3, 1, 2, 2);
  auto set = independent_set(tower, Level::Mid, 5, 2);
  auto top = FieldTower::with_top_degree(tower, 2 * set.degree);
  const auto elems = embed_columns(set, top, Level::Mid, Level::Top);
  REQUIRE(elems.size() == 5);
  CHECK(kwise_independent(elems, 2, Level::Mid).independent);
}

TEST_CASE("method names") {
  CHECK(method_name(IndepMethod::Bch) == "bch");
  CHECK(method_name(IndepMethod::Greedy) == "greedy");
}

TEST_CASE("large BCH sets skip the exhaustive check but stay independent") {
  auto base = FieldTower::create(2, 1, 1, 1);
  const IndependentSet big = bch_parity_columns(base, Level::Base, 27, 19);
  CHECK_FALSE(big.exhaustive);
  CHECK(big.kwise == 18);
  std::mt19937_64 rng(17);
  std::vector<std::size_t> order(27);
  for (std::size_t i = 0; i < 27; ++i) order[i] = i;
  for (int trial = 0; trial < 300; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> pick(order.begin(), order.begin() + 18);
    std::sort(pick.begin(), pick.end());
    CHECK(rank(big.coords.select_columns(pick)) == 18);
  }
  CHECK(bch_parity_columns(base, Level::Base, 9, 4).exhaustive);
}
