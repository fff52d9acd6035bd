#include <doctest.h>

#include "kocheck/translate.hpp"

using namespace kocheck;

TEST_CASE("koca to aks on boolean instances") {
  for (int n = 0; n <= 3; ++n) {
    Koca k = boolean_koca(n);
    Aks a = koca_to_aks(k);
    INFO("boolean:", n);
    CHECK(a.n_terms() == k.n());
    CHECK(a.n_stacks() == k.n());
    CHECK(check_aks_axioms(a).all_passed());
    // pole is the order and push is the implication
    for (int t = 0; t < k.n(); ++t)
      for (int p = 0; p < k.n(); ++p) {
        CHECK(a.orth(t, p) == k.leq(t, p));
        CHECK(a.push_at(t, p) == k.impl(t, p));
      }
    // store is negation into the least element
    const int bot = bottom_of(k);
    for (int p = 0; p < k.n(); ++p) CHECK(a.store[p] == k.impl(p, bot));
    // (S5) instance: t ≤ π forces ¬π ≤ t→π' for every π'
    for (int t = 0; t < k.n(); ++t)
      for (int p = 0; p < k.n(); ++p) {
        if (!k.leq(t, p)) continue;
        for (int p2 = 0; p2 < k.n(); ++p2)
          CHECK(k.leq(k.impl(p, bot), k.impl(t, p2)));
      }
  }
}

TEST_CASE("aks to koca and back on the boolean square") {
  Koca k = boolean_koca(2);
  Aks a = koca_to_aks(k);
  Koca back = aks_to_koca(a);
  CHECK(check_koca(back).all_passed());
  CHECK(back.n() == k.n());  // closed sets are the principal filters

  // the up-set map is an order isomorphism onto the derived carrier
  auto closed = enumerate_closed_stack_sets(a.rl);
  REQUIRE(static_cast<int>(closed.size()) == k.n());
  std::vector<int> up_index(k.n(), -1);
  for (int x = 0; x < k.n(); ++x) {
    for (size_t i = 0; i < closed.size(); ++i)
      if (closed[i].bits == k.leq_rows[x]) up_index[x] = static_cast<int>(i);
    REQUIRE(up_index[x] >= 0);
  }
  for (int x = 0; x < k.n(); ++x)
    for (int y = 0; y < k.n(); ++y)
      CHECK(k.leq(x, y) == back.leq(up_index[x], up_index[y]));

  // Φ contains the combinator values by construction
  CHECK(back.in_phi(back.k));
  CHECK(back.in_phi(back.s));
  CHECK(back.in_phi(back.e));
  CHECK(back.in_phi(back.c));
}

TEST_CASE("derived carrier respects the closed-set cap") {
  Caps tight;
  tight.max_closed_sets = 2;
  Aks a = koca_to_aks(boolean_koca(2));
  CHECK_THROWS_AS((void)aks_to_koca(a, tight), ResourceError);
}

TEST_CASE("galois clauses") {
  for (int n = 0; n <= 3; ++n) {
    Report rep = galois_check(boolean_koca(n));
    INFO("boolean:", n);
    CHECK(rep.all_passed());
  }
  // closed stack sets count equals the carrier size
  Koca k = boolean_koca(2);
  Aks a = koca_to_aks(k);
  CHECK(enumerate_closed_stack_sets(a.rl).size() == static_cast<size_t>(k.n()));
  // inf(↑a ⇒ ↑b) = a→b, directly
  for (int x = 0; x < k.n(); ++x)
    for (int y = 0; y < k.n(); ++y) {
      StackSet up_x{k.leq_rows[x]}, up_y{k.leq_rows[y]};
      auto raw = inf_of(k.leq_rows, op_imp_raw(a, up_x, up_y).bits);
      REQUIRE(raw.has_value());
      CHECK(*raw == k.impl(x, y));
    }
}

TEST_CASE("streicher equivalence of the induced orders") {
  for (int n = 1; n <= 3; ++n) {
    Aks a = koca_to_aks(boolean_koca(n));
    for (int i = 0; i <= 2; ++i) {
      PairScanOptions opt;
      opt.index_size = i;
      Report rep = streicher_iso_check(a, opt);
      INFO("boolean:", n, " index ", i);
      CHECK(rep.all_passed());
    }
  }
  // single point: one predicate only
  {
    PairScanOptions opt;
    opt.index_size = 1;
    CHECK(streicher_iso_check(single_point_aks(), opt).all_passed());
  }
}

TEST_CASE("tripos transport equivalence") {
  for (int n = 0; n <= 2; ++n)
    for (int i = 0; i <= 2; ++i) {
      PairScanOptions opt;
      opt.index_size = i;
      Report rep = roundtrip_tripos_equivalence(boolean_koca(n), opt);
      INFO("boolean:", n, " index ", i);
      CHECK(rep.all_passed());
    }
}

TEST_CASE("a wider filter still satisfies every equivalence") {
  // override the default Φ = {⊤}: an atom together with the top is
  // application-closed and still contains the derived combinators
  ProperQuadruple q = boolean_quadruple(2);
  q.phi |= Mask{1} << 0b01;
  Koca k = from_proper_quadruple(q);
  CHECK(check_koca(k).all_passed());
  CHECK(heyting_check(k).all_passed());
  CHECK(double_negation_realizer(k).all_passed());
  CHECK(galois_check(k).all_passed());
  Aks a = koca_to_aks(k);
  CHECK(check_aks_axioms(a).all_passed());
  for (int i = 0; i <= 2; ++i) {
    PairScanOptions opt;
    opt.index_size = i;
    CHECK(streicher_iso_check(a, opt).all_passed());
    CHECK(roundtrip_tripos_equivalence(k, opt).all_passed());
  }
}

TEST_CASE("sampling path stays deterministic") {
  // force sampling by shrinking the exhaustive cap
  PairScanOptions opt;
  opt.index_size = 2;
  opt.caps.pred_pairs_exhaustive = 4;
  opt.samples = 64;
  opt.seed = 17;
  Report r1 = roundtrip_tripos_equivalence(boolean_koca(2), opt);
  Report r2 = roundtrip_tripos_equivalence(boolean_koca(2), opt);
  CHECK(r1.all_passed());
  REQUIRE(r1.checks.size() == r2.checks.size());
  CHECK(r1.checks[0].cases == r2.checks[0].cases);
}
