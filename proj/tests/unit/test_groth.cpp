#include "doctest.h"

#include <random>

#include "posetbar/error.hpp"
#include "posetbar/groth.hpp"
#include "support.hpp"

using namespace posetbar;
using testing_support::cells;
using testing_support::load;

namespace {

struct Grid23 {
  PosetPtr poset = make_poset(FinitePoset::grid(2, 3));
  Workspace ws{poset, PrimeField(2)};
  Support s(const char* rows) const { return cells(*poset, rows); }
  RepPtr k(const char* rows) const { return ws.interval_rep(ws.catalog().index_of(s(rows))); }
};

const InvariantHandle kGpd{InvariantKind::gpd};
const InvariantHandle kChi{InvariantKind::chi};
const InvariantHandle kIntmult{InvariantKind::intmult};
const InvariantHandle kBetti0{InvariantKind::betti0};

}  // namespace

TEST_CASE("handle names") {
  for (const char* n : {"dimvec", "rk", "grk", "gpd", "intmult", "dimhom", "betti0", "chi", "ctot", "cxi"})
    CHECK(InvariantHandle::parse(n).name() == n);
  CHECK_THROWS_AS(InvariantHandle::parse("nope"), ParseError);
  CHECK(InvariantHandle::parse("gpd").barcoding());
  CHECK(InvariantHandle::parse("chi").barcoding());
  CHECK_FALSE(InvariantHandle::parse("dimhom").barcoding());
  CHECK_FALSE(InvariantHandle::parse("rk").barcoding());
  CHECK(InvariantHandle::parse("rk").keyspace() == Keyspace::segments);
  CHECK(InvariantHandle::parse("dimvec").keyspace() == Keyspace::elements);
}

TEST_CASE("normalization") {
  Grid23 g;
  auto n = load("N.json", g.poset);
  auto m = load("M.json", g.poset);
  auto x = KspElement::of(n) - KspElement::of(m);
  auto nx = normalize(x);
  REQUIRE(nx.terms().size() == 1);
  CHECK(as_interval_module(*nx.terms()[0].rep) == g.s("100;110"));
  CHECK(nx.terms()[0].coeff == 1);
  CHECK(normalize(x - x).empty());
  CHECK(same_class(KspElement::of(load("Y_plus.json", g.poset)), KspElement::of(m) + KspElement::of(g.k("110;011"))));
  CHECK_FALSE(same_class(KspElement::of(m), KspElement::of(g.k("110;011"))));
}

TEST_CASE("kernel element of a barcoding invariant") {
  Grid23 g;
  auto m = load("M.json", g.poset);
  auto z = kernel_element(g.ws, kBetti0, KspElement::of(m));
  CHECK(eval(g.ws, kBetti0, z).is_zero());
  CHECK(eval(g.ws, kChi, z) == eval(g.ws, kChi, KspElement::of(m)) - eval(g.ws, kBetti0, KspElement::of(m)));
  CHECK(kernel_element(g.ws, kGpd, KspElement::of(g.k("110;011"))).empty());
}

TEST_CASE("iota re-embeds interval-keyed values") {
  Grid23 g;
  InvariantValue v(Keyspace::intervals);
  v.add(g.s("110;011"), 2);
  v.add(g.s("000;010"), -1);
  auto x = iota(g.ws, v);
  CHECK(eval(g.ws, kGpd, x) == v);
  CHECK(eval(g.ws, kIntmult, x) == v);
  CHECK_THROWS_AS(iota(g.ws, dim_vector(*load("M.json", g.poset))), DomainError);
}

TEST_CASE("flip of N minus L") {
  Grid23 g;
  auto x = KspElement::of(load("N.json", g.poset)) - KspElement::of(load("L.json", g.poset));
  CHECK(eval(g.ws, kGpd, x).is_zero());
  auto y = flip(g.ws, kGpd, kChi, x);
  CHECK(eval(g.ws, kChi, y).is_zero());
  CHECK(eval(g.ws, kGpd, y) == InvariantValue(Keyspace::intervals) - eval(g.ws, kChi, x));
  auto [pos, neg] = pos_neg_parts(g.ws, y);
  CHECK(same_class(KspElement::of(pos), KspElement::of(load("Y_plus.json", g.poset))));
  CHECK(same_class(KspElement::of(neg), KspElement::of(load("Y_minus.json", g.poset))));
  CHECK(same_class(unflip(g.ws, kGpd, kChi, y), x));
  CHECK_THROWS_AS(flip(g.ws, kChi, kGpd, x), DomainError);
}

TEST_CASE("flip of zero") {
  Grid23 g;
  CHECK(flip(g.ws, kGpd, kChi, KspElement{}).empty());
  auto [pos, neg] = pos_neg_parts(g.ws, KspElement{});
  CHECK(pos->is_zero());
  CHECK(neg->is_zero());
}

TEST_CASE("flip is inverted by unflip on random kernel elements") {
  auto poset = make_poset(FinitePoset::grid(2, 2));
  Workspace ws(poset, PrimeField(3));
  std::mt19937_64 rng(13);
  for (int t = 0; t < 15; ++t) {
    auto m = testing_support::random_module(ws, rng, 9);
    auto x = kernel_element(ws, kGpd, KspElement::of(m));
    auto y = flip(ws, kGpd, kChi, x);
    CHECK(same_class(unflip(ws, kGpd, kChi, y), x));
    CHECK(same_class(flip(ws, kGpd, kChi, unflip(ws, kGpd, kChi, y)), y));
  }
}

TEST_CASE("barcoding invariants fix interval combinations") {
  auto poset = make_poset(FinitePoset::grid(2, 2));
  Workspace ws(poset, PrimeField(2));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    auto sample = testing_support::random_interval_decomposable(ws, rng, 4);
    auto expected = from_catalog_vector(ws, sample.mult);
    for (const auto& f : {kGpd, kChi, kIntmult, kBetti0}) CHECK(f(ws, sample.module) == expected);
  }
}

TEST_CASE("separating pair checks") {
  Grid23 g;
  auto n = load("N.json", g.poset);
  auto l = load("L.json", g.poset);
  auto c = separating_pair_check(g.ws, kGpd, kChi, n, l);
  REQUIRE(c.pairs.size() == 1);
  CHECK(c.pairs[0].verdict == "chi separates, gpd does not");
  CHECK(separating_pair_check(g.ws, kGpd, kGpd, n, l).pairs[0].verdict == "neither separates");
  auto m = load("M.json", g.poset);
  CHECK(separating_pair_check(g.ws, kIntmult, kChi, m, l).pairs[0].verdict == "both separate");
  CHECK(reverify(g.ws, c).empty());
}

TEST_CASE("incomparability certificate") {
  Grid23 g;
  auto n = load("N.json", g.poset);
  auto l = load("L.json", g.poset);
  auto c = incomparability_certificate(g.ws, kGpd, kChi, n, l);
  REQUIRE(c.pairs.size() == 2);
  CHECK(c.pairs[0].g_separates);
  CHECK_FALSE(c.pairs[0].f_separates);
  CHECK(c.pairs[1].f_separates);
  CHECK_FALSE(c.pairs[1].g_separates);
  CHECK(same_class(KspElement::of(c.pairs[1].first), KspElement::of(load("Y_plus.json", g.poset))));
  CHECK(reverify(g.ws, c).empty());

  auto tampered = c;
  tampered.pairs[1].g_first = tampered.pairs[1].f_first;
  CHECK_FALSE(reverify(g.ws, tampered).empty());
  CHECK_THROWS_AS(incomparability_certificate(g.ws, kChi, kGpd, n, l), DomainError);
}

TEST_CASE("reverse pairs from flipping") {
  Grid23 g;
  auto n = load("N.json", g.poset);
  auto l = load("L.json", g.poset);
  auto m = load("M.json", g.poset);

  // [N] - [L] - iota(intmult) leaves [M] alone.
  auto c1 = incomparability_certificate(g.ws, kGpd, kIntmult, n, l);
  REQUIRE(c1.pairs.size() == 2);
  CHECK(same_class(KspElement::of(c1.pairs[1].first), KspElement::of(m)));
  CHECK(c1.pairs[1].second->is_zero());

  // [M] - [Y-] - iota(gpd) is again [N] - [L].
  auto c3 = incomparability_certificate(g.ws, kBetti0, kGpd, m, load("Y_minus.json", g.poset));
  REQUIRE(c3.pairs.size() == 2);
  CHECK(same_class(KspElement::of(c3.pairs[1].first) - KspElement::of(c3.pairs[1].second),
                   KspElement::of(n) - KspElement::of(l)));
  CHECK(c3.pairs[1].first->dims() == n->dims());
  CHECK(c3.pairs[1].second->dims() == l->dims());
}
