#include "doctest.h"

#include <random>

#include "posetbar/error.hpp"
#include "posetbar/relhom.hpp"
#include "support.hpp"

using namespace posetbar;
using testing_support::cells;
using testing_support::load;

namespace {

struct Grid23 {
  PosetPtr poset = make_poset(FinitePoset::grid(2, 3));
  Workspace ws{poset, PrimeField(2)};
  Support s(const char* rows) const { return cells(*poset, rows); }
};

InvariantValue intervals_of(std::initializer_list<Support> xs) {
  InvariantValue v(Keyspace::intervals);
  for (const auto& k : xs) v.add(k, 1);
  return v;
}

// sum_i (-1)^i dim I_i(x) must equal dim M(x).
bool alternating_dims_match(const Resolution& r) {
  const auto& m = *r.target;
  for (ElementId x = 0; x < m.poset()->size(); ++x) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < r.terms.size(); ++i)
      s += (i % 2 ? -1 : 1) * static_cast<std::int64_t>(r.terms[i].module->dim(x));
    if (s != static_cast<std::int64_t>(m.dim(x))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("basis sets must contain the projectives") {
  Grid23 g;
  CHECK(BasisSet::all_intervals(g.ws).size() == 27);
  CHECK(BasisSet::projectives(g.ws).size() == 6);
  auto members = BasisSet::projectives(g.ws).members();
  members.pop_back();
  CHECK_THROWS_AS(BasisSet(g.ws, members), DomainError);
  members = BasisSet::projectives(g.ws).members();
  members.push_back(members.front());
  CHECK(BasisSet(g.ws, members).size() == 6);
}

TEST_CASE("interval resolution of the fixture module") {
  Grid23 g;
  auto m = load("M.json", g.poset);
  auto r = minimal_resolution(g.ws, m, BasisSet::all_intervals(g.ws));
  REQUIRE(r.terms.size() == 2);
  CHECK(r.length() == 1);
  CHECK(betti(r, 0) == intervals_of({g.s("000;011"), g.s("110;010"), g.s("110;111")}));
  CHECK(betti(r, 1) == intervals_of({g.s("110;011")}));
  CHECK(betti(r, 0).at(g.s("110;111")) == 1);
  auto chi = intervals_of({g.s("000;011"), g.s("110;010"), g.s("110;111")}) - intervals_of({g.s("110;011")});
  CHECK(euler_char(r) == chi);
  CHECK(audit_resolution(r).empty());
  CHECK(alternating_dims_match(r));
  REQUIRE(r.terms[1].syzygy);
  CHECK(as_interval_module(*r.terms[1].syzygy) == g.s("110;011"));
}

TEST_CASE("interval modules resolve in one step") {
  Grid23 g;
  auto q = BasisSet::all_intervals(g.ws);
  for (std::size_t i = 0; i < g.ws.catalog().size(); ++i) {
    auto r = minimal_resolution(g.ws, g.ws.interval_rep(i), q);
    CHECK(r.length() == 0);
    CHECK(betti(r, 0) == intervals_of({g.ws.catalog()[i].support}));
  }
  auto zero = share(Representation::zero(g.poset, PrimeField(2)));
  auto r0 = minimal_resolution(g.ws, zero, q);
  CHECK(r0.terms.empty());
  CHECK(euler_char(r0).is_zero());
}

TEST_CASE("projective resolution of a simple module") {
  Grid23 g;
  auto p = BasisSet::projectives(g.ws);
  auto k = g.ws.interval_rep(g.ws.catalog().index_of(g.s("000;010")));
  auto r = minimal_resolution(g.ws, k, p);
  // Koszul pattern on the grid: one, two, one generators.
  REQUIRE(r.terms.size() == 3);
  CHECK(betti(r, 0) == intervals_of({principal_up_set(*g.poset, 1)}));
  CHECK(betti(r, 1) == intervals_of({principal_up_set(*g.poset, 2), principal_up_set(*g.poset, 4)}));
  CHECK(betti(r, 2) == intervals_of({principal_up_set(*g.poset, 5)}));
  CHECK(audit_resolution(r).empty());
  CHECK(alternating_dims_match(r));
}

TEST_CASE("depth limit") {
  Grid23 g;
  auto m = load("M.json", g.poset);
  CHECK_THROWS_AS(minimal_resolution(g.ws, m, BasisSet::all_intervals(g.ws), 0), CapExceeded);
  CHECK_NOTHROW(minimal_resolution(g.ws, m, BasisSet::all_intervals(g.ws), 1));
}

TEST_CASE("minimal covers are epimorphisms with the expected multiplicities") {
  auto poset = make_poset(FinitePoset::grid(2, 2));
  Workspace ws(poset, PrimeField(3));
  std::mt19937_64 rng(21);
  for (auto q : {BasisSet::all_intervals(ws), BasisSet::projectives(ws)}) {
    for (int t = 0; t < 20; ++t) {
      auto m = testing_support::random_module(ws, rng, 10);
      auto c = minimal_cover(ws, m, q);
      CHECK(check_naturality(c.map).empty());
      for (ElementId x = 0; x < poset->size(); ++x) CHECK(rank(c.map.components[x]) == m->dim(x));
      CHECK(c.multiplicities == cover_multiplicities(ws, m, q));
      std::int64_t total = 0;
      for (const auto& [k, v] : c.multiplicities.entries()) {
        CHECK(q.contains(ws.catalog().index_of(k)));
        total += v;
      }
      CHECK(total == static_cast<std::int64_t>(c.summands.size()));
    }
  }
}

TEST_CASE("resolutions of random modules pass the audit") {
  for (auto [rows, cols] : {std::pair{2, 2}, std::pair{2, 3}}) {
    auto poset = make_poset(FinitePoset::grid(rows, cols));
    Workspace ws(poset, PrimeField(5));
    std::mt19937_64 rng(rows * 10 + cols);
    for (int t = 0; t < 15; ++t) {
      auto a = testing_support::random_module(ws, rng, 12);
      auto b = testing_support::random_module(ws, rng, 12);
      auto ra = minimal_resolution(ws, a, BasisSet::all_intervals(ws));
      auto rb = minimal_resolution(ws, b, BasisSet::all_intervals(ws));
      CHECK(audit_resolution(ra).empty());
      CHECK(alternating_dims_match(ra));
      auto sum = share(random_basis_change(direct_sum({a, b}), rng()));
      auto rs = minimal_resolution(ws, sum, BasisSet::all_intervals(ws));
      CHECK(euler_char(rs) == euler_char(ra) + euler_char(rb));
      CHECK(betti(rs, 0) == betti(ra, 0) + betti(rb, 0));
    }
  }
}
