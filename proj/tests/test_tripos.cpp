#include <doctest.h>

#include "kocheck/tripos.hpp"

using namespace kocheck;

namespace {

Predicate make_pred(std::initializer_list<int> vs) {
  Predicate p;
  for (int v : vs) p.values.push_back(static_cast<std::uint16_t>(v));
  return p;
}

FiniteFunction make_fun(int target, std::initializer_list<int> graph) {
  FiniteFunction f;
  f.target = target;
  for (int v : graph) f.graph.push_back(static_cast<std::uint16_t>(v));
  f.source = static_cast<int>(f.graph.size());
  return f;
}

}  // namespace

TEST_CASE("uniform entailment") {
  Koca k = boolean_koca(2);
  Predicate phi = make_pred({1, 2});
  CHECK(entails_pred(k, phi, phi).has_value());
  CHECK(entails_pred(k, Predicate{}, Predicate{}).has_value());  // empty index
  Predicate top = make_pred({3, 3}), bot = make_pred({0, 0});
  CHECK(!entails_pred(k, top, bot).has_value());
  CHECK(entails_pred(k, bot, top).has_value());
}

TEST_CASE("reindexing") {
  Koca k = boolean_koca(2);
  Predicate phi = make_pred({0, 3});
  CHECK(reindex(identity_fun(2), phi) == phi);
  FiniteFunction c = make_fun(2, {1, 1, 1});
  Predicate r = reindex(c, phi);
  CHECK(r == make_pred({3, 3, 3}));
  // composite of two maps equals sequential reindexing
  FiniteFunction g = make_fun(3, {2, 0});
  CHECK(reindex(g, reindex(c, phi)) == reindex(compose(c, g), phi));
  CHECK(reindex_check(k, 2).all_passed());
  CHECK_THROWS_AS((void)reindex(make_fun(3, {0}), phi), StructuralError);
}

TEST_CASE("pointwise connectives collapse to element operations on a point") {
  Koca k = boolean_koca(2);
  BasicCombinators bc = derived_basic_combinators(k);
  for (int a = 0; a < k.n(); ++a)
    for (int b = 0; b < k.n(); ++b) {
      Predicate pa = make_pred({a}), pb = make_pred({b});
      CHECK(meet_pred(k, pa, pb).at(0) == k.apply(k.apply(bc.pair, a), b));
      CHECK(imp_pred(k, pa, pb).at(0) == k.impl(a, b));
    }
  CHECK(top_pred(k, 1).at(0) == k.k);
}

TEST_CASE("universal quantification along maps") {
  Koca k = boolean_koca(2);
  Predicate psi = make_pred({1, 2, 3});
  SUBCASE("identity keeps the predicate") {
    CHECK(forall_along(k, identity_fun(3), psi) == psi);
  }
  SUBCASE("constant map to a point takes the global inf") {
    FiniteFunction c = make_fun(1, {0, 0, 0});
    auto direct = inf_of(k.leq_rows, 0b1110);  // {1,2,3} as a mask
    CHECK(forall_along(k, c, psi).at(0) == *direct);
  }
  SUBCASE("empty fiber yields the top") {
    FiniteFunction f = make_fun(2, {0, 0, 0});  // nothing maps to index 1
    Predicate out = forall_along(k, f, psi);
    CHECK(out.at(1) == k.n() - 1);
  }
}

TEST_CASE("same-realizer adjunction across the quantifier") {
  Koca k = boolean_koca(2);
  for (auto graph : {std::vector<int>{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}}) {
    FiniteFunction f;
    f.target = 2;
    for (int v : graph) f.graph.push_back(static_cast<std::uint16_t>(v));
    f.source = static_cast<int>(f.graph.size());
    CHECK(forall_adjunction_check(k, f).all_passed());
  }
}

TEST_CASE("pullback squares and Beck-Chevalley") {
  Koca k = boolean_koca(2);
  SUBCASE("product square over a point") {
    FiniteFunction f = make_fun(1, {0, 0});
    FiniteFunction g = make_fun(1, {0, 0, 0});
    PullbackSquare sq = canonical_pullback(f, g);
    CHECK(sq.p.source == 6);  // J × K
    CHECK(validate_pullback(sq));
    CHECK(beck_chevalley_check(k, sq).all_passed());
  }
  SUBCASE("degenerate square along the identity") {
    PullbackSquare sq = canonical_pullback(identity_fun(2), make_fun(2, {1, 0}));
    CHECK(validate_pullback(sq));
    CHECK(beck_chevalley_check(k, sq).all_passed());
  }
  SUBCASE("seeded random squares validate and commute") {
    SplitMix64 rng(5);
    int built = 0;
    while (built < 120) {
      int isz = 1 + static_cast<int>(rng.below(4));
      int jsz = static_cast<int>(rng.below(5));
      int ksz = static_cast<int>(rng.below(5));
      FiniteFunction f, g;
      f.source = jsz;
      f.target = isz;
      g.source = ksz;
      g.target = isz;
      for (int j = 0; j < jsz; ++j)
        f.graph.push_back(static_cast<std::uint16_t>(rng.below(isz)));
      for (int j = 0; j < ksz; ++j)
        g.graph.push_back(static_cast<std::uint16_t>(rng.below(isz)));
      PullbackSquare sq = canonical_pullback(f, g);
      REQUIRE(validate_pullback(sq));
      if (jsz <= 3) {  // keep the predicate space small
        CHECK(beck_chevalley_check(k, sq).all_passed());
        ++built;
      }
    }
  }
  SUBCASE("tampered squares are rejected") {
    PullbackSquare sq = canonical_pullback(make_fun(1, {0, 0}), make_fun(1, {0}));
    REQUIRE(sq.p.source == 2);
    sq.p.graph.pop_back();
    sq.q.graph.pop_back();
    sq.p.source = sq.q.source = 1;
    CHECK(!validate_pullback(sq));
    Report rep = beck_chevalley_check(k, sq);
    CHECK(!rep.all_passed());
  }
}

TEST_CASE("generic predicate and classical structure") {
  Koca k = boolean_koca(2);
  CHECK(generic_predicate_check(k, 2).all_passed());
  CHECK(classical_check(k, 2).all_passed());
  CHECK(classical_check(trivial_koca(), 1).all_passed());
}

TEST_CASE("predicate-level heyting and preorder") {
  Koca k = boolean_koca(1);
  CHECK(preorder_check(k, 2).all_passed());
  CHECK(heyting_pred_check(k, 2).all_passed());
}
