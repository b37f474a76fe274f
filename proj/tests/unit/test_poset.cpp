#include "doctest.h"

#include <algorithm>

#include "posetbar/error.hpp"
#include "posetbar/poset.hpp"
#include "support.hpp"

using namespace posetbar;
using testing_support::brute_force_intervals;

namespace {

// Product-of-chains closed form: mu is -1 on a unit step per coordinate.
std::int64_t grid_mobius(const FinitePoset& g, ElementId a, ElementId b) {
  if (!g.leq(a, b)) return 0;
  const auto [ai, aj] = g.grid_coords(a);
  const auto [bi, bj] = g.grid_coords(b);
  auto chain_mu = [](std::size_t x, std::size_t y) -> std::int64_t { return y == x ? 1 : (y == x + 1 ? -1 : 0); };
  return chain_mu(ai, bi) * chain_mu(aj, bj);
}

}  // namespace

TEST_CASE("grid construction") {
  auto g = FinitePoset::grid(2, 3);
  CHECK(g.size() == 6);
  CHECK(g.covers().size() == 7);
  CHECK(g.name(0) == "(1,1)");
  CHECK(g.name(5) == "(2,3)");
  CHECK(*g.find("(2,1)") == 3);
  CHECK(g.leq(0, 5));
  CHECK_FALSE(g.leq(2, 3));  // (1,3) vs (2,1)
  CHECK_FALSE(g.comparable(2, 3));
  const auto& lin = g.linear_extension();
  for (std::size_t i = 0; i < lin.size(); ++i)
    for (std::size_t j = i + 1; j < lin.size(); ++j) CHECK_FALSE(g.less(lin[j], lin[i]));
}

TEST_CASE("hasse validation") {
  using P = std::vector<std::pair<std::string, std::string>>;
  CHECK_NOTHROW(FinitePoset::from_hasse({"a", "b", "c"}, P{{"a", "b"}, {"b", "c"}}));
  CHECK_THROWS_AS(FinitePoset::from_hasse({"a", "b"}, P{{"a", "b"}, {"b", "a"}}), DomainError);
  CHECK_THROWS_AS(FinitePoset::from_hasse({"a", "b", "c"}, P{{"a", "b"}, {"b", "c"}, {"a", "c"}}), DomainError);
  CHECK_THROWS_AS(FinitePoset::from_hasse({"a", "a"}, P{}), DomainError);
  CHECK_THROWS_AS(FinitePoset::from_hasse({"a", "b"}, P{{"a", "z"}}), DomainError);
  CHECK_THROWS_AS(FinitePoset::from_hasse({"a"}, P{{"a", "a"}}), DomainError);
}

TEST_CASE("interval catalogs match exhaustive search") {
  struct Case {
    FinitePoset p;
    std::size_t expected;
  };
  std::vector<Case> cases{{FinitePoset::grid(2, 2), 11}, {FinitePoset::grid(2, 3), 27}, {FinitePoset::chain(3), 6},
                          {FinitePoset::chain(5), 15}};
  for (auto& c : cases) {
    auto poset = make_poset(c.p);
    auto cat = enumerate_intervals(poset);
    auto brute = brute_force_intervals(*poset);
    CHECK(cat->size() == c.expected);
    CHECK(brute.size() == c.expected);
    for (const auto& s : brute) CHECK(cat->find(s).has_value());
    for (std::size_t i = 1; i < cat->size(); ++i) CHECK(canonical_less((*cat)[i - 1].support, (*cat)[i].support));
    CHECK(cat->principal_up_sets().size() == poset->size());
  }
}

TEST_CASE("interval flags") {
  auto poset = make_poset(FinitePoset::grid(2, 3));
  auto cat = enumerate_intervals(poset);
  const auto& p = *poset;
  std::size_t segs = 0;
  for (ElementId x = 0; x < p.size(); ++x)
    for (ElementId y = 0; y < p.size(); ++y)
      if (p.leq(x, y)) {
        ++segs;
        const auto idx = cat->segment_index(x, y);
        CHECK((*cat)[idx].is_segment);
        CHECK((*cat)[idx].support == segment(p, x, y));
      }
  CHECK(cat->segments().size() == segs);
  auto up = principal_up_set(p, 1);
  CHECK(up == Support{1, 2, 4, 5});
  CHECK((*cat)[cat->index_of(up)].is_principal_up_set);
  CHECK(hook(p, 0, 2) == Support{0, 1, 3, 4});
  CHECK_FALSE(p.is_interval(Support{0, 5}));
  CHECK_FALSE(p.is_connected(Support{2, 3}));
  CHECK(p.is_convex(Support{2, 3}));
  CHECK_THROWS(cat->index_of(Support{0, 5}));
}

TEST_CASE("enumeration cap") {
  auto big = make_poset(FinitePoset::chain(25));
  CHECK_THROWS_AS(enumerate_intervals(big), CapExceeded);
}

TEST_CASE("mobius function") {
  auto chain = FinitePoset::chain(4);
  auto mu = mobius(chain);
  for (ElementId a = 0; a < 4; ++a)
    for (ElementId b = 0; b < 4; ++b) CHECK(mu(a, b) == (b == a ? 1 : (b == a + 1 ? -1 : 0)));

  auto g = FinitePoset::grid(2, 3);
  auto mg = mobius(g);
  for (ElementId a = 0; a < g.size(); ++a)
    for (ElementId b = 0; b < g.size(); ++b) CHECK(mg(a, b) == grid_mobius(g, a, b));

  CHECK(convolve(mg, zeta(g), g) == delta(g));
  CHECK(convolve(zeta(g), mg, g) == delta(g));
}

TEST_CASE("containment order of intervals") {
  auto cat = enumerate_intervals(make_poset(FinitePoset::grid(2, 2)));
  const auto& q = cat->containment();
  for (std::size_t i = 0; i < cat->size(); ++i)
    for (std::size_t j = 0; j < cat->size(); ++j) {
      const auto& a = (*cat)[i].support;
      const auto& b = (*cat)[j].support;
      CHECK(q.leq(i, j) == std::includes(a.begin(), a.end(), b.begin(), b.end()));
    }
}
