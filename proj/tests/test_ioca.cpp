#include <doctest.h>

#include "kocheck/ioca.hpp"

using namespace kocheck;

namespace {

// hand-built chain with Heyting implication and a forced (wrong) Peirce
// element on top
Koca chain_koca_forced_c(int n) {
  ProperQuadruple q = chain_quadruple(n);
  Koca k;
  k.carrier = q.carrier;
  k.leq_rows = q.leq_rows;
  k.imp_table = q.imp_table;
  k.phi = q.phi;
  k.app_table.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      k.app_table[a * n + b] = static_cast<std::uint16_t>(std::min(a, b));
  k.k = k.s = k.e = k.c = n - 1;
  return k;
}

}  // namespace

TEST_CASE("infima and suprema of subsets") {
  Koca b2 = boolean_koca(2);
  CHECK(*inf_of(b2.leq_rows, 0) == b2.n() - 1);  // empty inf is the top
  CHECK(*sup_of(b2.leq_rows, 0) == 0);           // empty sup is the bottom
  CHECK(bottom_of(b2) == 0);
  for (Mask sub = 0; sub <= full_mask(b2.n()); ++sub) {
    auto i = inf_of(b2.leq_rows, sub);
    REQUIRE(i.has_value());
    // boolean infimum is the intersection of the element masks
    Mask expect = full_mask(2);
    Mask rem = sub;
    while (rem) {
      int x = __builtin_ctzll(rem);
      rem &= rem - 1;
      expect &= static_cast<Mask>(x);
    }
    CHECK(*i == static_cast<int>(expect));
    if (sub == full_mask(b2.n())) break;
  }
  // a poset without binary meets: two incomparable elements
  std::vector<Mask> leq = {0b01, 0b10};
  CHECK(!inf_of(leq, 0b11).has_value());
}

TEST_CASE("boolean instances pass every layer") {
  for (int n = 1; n <= 4; ++n) {
    Koca k = boolean_koca(n);
    INFO("boolean:", n);
    CHECK(check_oca(k).all_passed());
    CHECK(check_ioca(k).all_passed());
    CHECK(check_koca(k).all_passed());
  }
  CHECK(check_koca(trivial_koca()).all_passed());
}

TEST_CASE("derived quadruple combinators are the classical tautology values") {
  Koca k = boolean_koca(2);
  const int top = k.n() - 1;
  CHECK(k.k == top);
  CHECK(k.s == top);
  CHECK(k.e == top);
  CHECK(k.c == top);
  // derived application is the meet
  for (int a = 0; a < k.n(); ++a)
    for (int b = 0; b < k.n(); ++b) CHECK(k.apply(a, b) == (a & b));
  // and is the least solution of a ≤ b→c
  for (int a = 0; a < k.n(); ++a)
    for (int b = 0; b < k.n(); ++b) {
      int ab = k.apply(a, b);
      CHECK(k.leq(a, k.impl(b, ab)));
      for (int c = 0; c < k.n(); ++c)
        if (k.leq(a, k.impl(b, c))) CHECK(k.leq(ab, c));
    }
}

TEST_CASE("chain quadruple is rejected at the Peirce clause") {
  try {
    (void)from_proper_quadruple(chain_quadruple(3));
    FAIL("expected a properness rejection");
  } catch (const PropernessError& e) {
    CHECK(e.clause == "c in phi");
  }
  // the one-element chain is fine
  CHECK(check_koca(from_proper_quadruple(chain_quadruple(1))).all_passed());
  // the two-element chain is boolean:1 in disguise
  CHECK(check_koca(from_proper_quadruple(chain_quadruple(2))).all_passed());
}

TEST_CASE("forced Peirce on the chain fails exactly at (C)") {
  Koca k = chain_koca_forced_c(3);
  CHECK(check_ioca(k).all_passed());
  Report rep = check_koca(k);
  const CheckResult* pc = rep.find("peirce-c");
  REQUIRE(pc != nullptr);
  CHECK(!pc->passed);
  REQUIRE(pc->witness.has_value());
  CHECK(pc->witness->find("a=c1") != std::string::npos);
}

TEST_CASE("imp mutations are caught with witnesses") {
  Koca base = boolean_koca(2);
  bool pa_found = false, e_found = false, c_found = false;
  for (int i = 0; i < base.n() * base.n(); ++i)
    for (int v = 0; v < base.n(); ++v) {
      if (base.imp_table[i] == v) continue;
      Koca m = base;
      m.imp_table[i] = static_cast<std::uint16_t>(v);
      Report rep = check_koca(m);
      auto failed = [&](const char* name) {
        const CheckResult* c = rep.find(name);
        return c && !c->passed && c->witness.has_value();
      };
      pa_found |= failed("half-adjunction-pa");
      e_found |= failed("adjunctor-e");
      c_found |= failed("peirce-c");
    }
  CHECK(pa_found);
  CHECK(e_found);
  CHECK(c_found);
}

TEST_CASE("heyting preorder theorem") {
  for (int n = 1; n <= 3; ++n) CHECK(heyting_check(boolean_koca(n)).all_passed());
  // also holds for the chain as an ioca
  Koca chain = chain_koca_forced_c(3);
  CHECK(heyting_check(chain).all_passed());
}

TEST_CASE("double negation") {
  for (int n = 1; n <= 3; ++n)
    CHECK(double_negation_realizer(boolean_koca(n)).all_passed());
  CHECK(double_negation_realizer(trivial_koca()).all_passed());

  // the chain with a forced c fails at the middle element
  Koca chain = chain_koca_forced_c(3);
  Report rep = double_negation_realizer(chain);
  const CheckResult* dn = rep.find("c-realizes-dne");
  REQUIRE(dn != nullptr);
  CHECK(!dn->passed);
  REQUIRE(dn->witness.has_value());
  CHECK(dn->witness->find("a=c1") != std::string::npos);
}

TEST_CASE("explicit bottom parameter") {
  Koca b2 = boolean_koca(2);
  CHECK(double_negation_realizer(b2, 0).all_passed());
  // a wrong bottom makes the check fail honestly
  Report rep = double_negation_realizer(b2, b2.n() - 1);
  CHECK(!rep.all_passed());
}

TEST_CASE("inf-completeness violations are reported") {
  Ioca x;
  x.carrier = {"a", "b"};
  x.leq_rows = {0b01, 0b10};  // two incomparable points
  x.app_table = {0, 0, 0, 0};
  x.imp_table = {1, 1, 1, 1};
  x.k = x.s = x.e = 0;
  x.phi = 0b01;
  Report rep = check_ioca(x);
  const CheckResult* comp = rep.find("inf-complete");
  REQUIRE(comp != nullptr);
  CHECK(!comp->passed);
}
