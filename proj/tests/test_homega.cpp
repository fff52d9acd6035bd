#include <doctest.h>

#include "kocheck/homega.hpp"

using namespace kocheck;

namespace {

KindPtr kI() { return kbase("I"); }

HoSignature z3_sig() {
  HoSignature sig;
  sig.base_kinds = {"I"};
  sig.consts["zero"] = kI();
  sig.consts["succ"] = karrow(kI(), kI());
  sig.consts["p"] = karrow(kI(), kind_o);
  return sig;
}

// I = Z/3 with successor +1 and the predicate table (⊤, ⊥, ⊤)
Interp z3_interp(const Koca& alg) {
  Interp in;
  in.alg = &alg;
  in.sig = z3_sig();
  in.kind_sizes["I"] = 3;
  in.const_values["zero"] = 0;
  const int top = alg.n() - 1;
  long succ = 0, place = 1;
  for (long x = 0; x < 3; ++x) {
    succ += ((x + 1) % 3) * place;
    place *= 3;
  }
  in.const_values["succ"] = succ;
  long p = 0;
  place = 1;
  for (long x = 0; x < 3; ++x) {
    p += (x == 1 ? 0 : top) * place;
    place *= alg.n();
  }
  in.const_values["p"] = p;
  return in;
}

}  // namespace

TEST_CASE("kinds") {
  HoSignature sig = z3_sig();
  KindPtr k = parse_kind(sig, "I -> (I -> o) -> o");
  CHECK(show_kind(k) == "I -> (I -> o) -> o");
  CHECK(kind_equal(k, karrow(kI(), karrow(karrow(kI(), kind_o), kind_o))));
  CHECK_THROWS_AS((void)parse_kind(sig, "J"), HoParseError);
}

TEST_CASE("parsing and kind checking") {
  HoSignature sig = z3_sig();
  sig.consts["y"] = karrow(kI(), kind_o);
  Expr e = parse_homega(sig, "forall x:I. (y x => y x)");
  CHECK(kind_equal(e->kind, kind_o));
  CHECK(e->node == HoExpr::Forall);
  CHECK(show_expr(e) == "forall x:I. y x => y x");

  SUBCASE("base-kind expressions cannot be applied") {
    HoSignature s2 = z3_sig();
    s2.consts["x"] = kI();
    s2.consts["y"] = kI();
    CHECK_THROWS_AS((void)parse_homega(s2, "x y"), HoParseError);
  }
  SUBCASE("unbound identifiers and trailing input") {
    CHECK_THROWS_AS((void)parse_homega(sig, "q zero"), HoParseError);
    CHECK_THROWS_AS((void)parse_homega(sig, "p zero )"), HoParseError);
  }
  SUBCASE("lambda binders") {
    Expr lam = parse_homega(sig, "\\x:I. p x");
    CHECK(lam->node == HoExpr::Lam);
    CHECK(kind_equal(lam->kind, karrow(kI(), kind_o)));
  }
  SUBCASE("equality sugar expands to the Leibniz schema") {
    Expr eq = parse_homega(sig, "zero == succ zero");
    Expr zero = econst("zero", kI());
    Expr succ0 = eapp(econst("succ", karrow(kI(), kI())), zero);
    CHECK(alpha_equal(eq, leibniz_eq(zero, succ0)));
    CHECK(eq->node == HoExpr::Forall);
    CHECK(eq->binder->is_arrow());
  }
}

TEST_CASE("substitution avoids capture") {
  HoSignature sig = z3_sig();
  // (forall n:I. p n => p m){m := n} must rename the binder
  Expr body = eimplies(eapp(econst("p", sig.consts["p"]), evar("n", kI())),
                       eapp(econst("p", sig.consts["p"]), evar("m", kI())));
  Expr f = eforall("n", kI(), body);
  Expr sub = subst_expr(f, "m", evar("n", kI()));
  auto fv = free_vars(sub);
  REQUIRE(fv.size() == 1);
  CHECK(fv[0].first == "n");
  CHECK(sub->name != "n");  // binder renamed away from the substituted variable
}

TEST_CASE("interpretation") {
  Koca alg = boolean_koca(2);
  Interp in = z3_interp(alg);
  HoSignature& sig = in.sig;
  const long top = alg.n() - 1;

  CHECK(interpret(in, parse_homega(sig, "p zero")) == top);
  CHECK(interpret(in, parse_homega(sig, "p (succ zero)")) == 0);
  // closed A gives A => A the top value
  CHECK(interpret(in, parse_homega(sig, "p (succ zero) => p (succ zero)")) == top);
  // singleton quantification equals the instance
  Interp one = in;
  one.kind_sizes["I"] = 1;
  one.const_values["succ"] = 0;
  one.const_values["p"] = top;
  CHECK(interpret(one, parse_homega(sig, "forall x:I. p x")) ==
        interpret(one, parse_homega(sig, "p zero")));
  // semantic beta
  Expr redex = eapp(parse_homega(sig, "\\x:I. p (succ x)"), econst("zero", kI()));
  CHECK(interpret(in, redex) == interpret(in, parse_homega(sig, "p (succ zero)")));
  // missing constant
  Interp broken = in;
  broken.const_values.erase("p");
  CHECK_THROWS_AS((void)interpret(broken, parse_homega(sig, "p zero")),
                  StructuralError);
}

TEST_CASE("substitution soundness for the semantics") {
  Koca alg = boolean_koca(2);
  Interp in = z3_interp(alg);
  HoSignature& sig = in.sig;
  Expr body = parse_homega(sig, "\\x:I. p x => p (succ x)");
  for (long v = 0; v < 3; ++v) {
    Expr a = eimplies(eapp(econst("p", sig.consts["p"]), evar("x", kI())),
                      eapp(econst("p", sig.consts["p"]),
                           eapp(econst("succ", sig.consts["succ"]), evar("x", kI()))));
    Expr m = econst("zero", kI());
    long lhs = interpret(in, subst_expr(a, "x", m));
    long rhs = interpret(in, a, {{"x", interpret(in, m)}});
    CHECK(lhs == rhs);
    (void)v;
    (void)body;
  }
}

TEST_CASE("derivation checking extracts realizers") {
  Koca alg = boolean_koca(2);
  HoSignature sig = z3_sig();
  Expr pz = parse_homega(sig, "p zero");

  SUBCASE("axiom rule") {
    HoSequent seq = check_derivation(alg, {{"u", pz}}, dax(0));
    CHECK(seq.realizer->kind == CombTerm::Var);
    CHECK(seq.realizer->var == "u");
    CHECK(alpha_equal(seq.conclusion, pz));
  }
  SUBCASE("implication introduction wraps e(λ*x p)") {
    HoSequent seq = check_derivation(alg, {}, dimp_i("h", pz, dax(0)));
    Term expect = tapp(tconst(alg.e),
                       tapps({tconst(alg.s), tconst(alg.k), tconst(alg.k)}));
    CHECK(term_equal(seq.realizer, expect));
    CHECK(alpha_equal(seq.conclusion, eimplies(pz, pz)));
  }
  SUBCASE("elimination premise mismatch is rejected") {
    Expr psz = parse_homega(sig, "p (succ zero)");
    Deriv bad = dimp_e(dimp_i("h", pz, dax(0)), dax(0));
    CHECK_THROWS_AS((void)check_derivation(alg, {{"u", psz}}, bad), StructuralError);
  }
}

TEST_CASE("forall introduction rejects captured variables") {
  Koca alg = boolean_koca(2);
  HoSignature sig = z3_sig();
  Expr px = eapp(econst("p", sig.consts["p"]), evar("x", kI()));
  // x free in the context: generalizing over it is invalid
  CHECK_THROWS_AS((void)check_derivation(alg, {{"u", px}}, dforall_i("x", kI(), dax(0))),
                  StructuralError);
  // generalizing over the same name at a different kind is a kind clash
  CHECK_THROWS_AS(
      (void)check_derivation(alg, {}, dforall_i("x", kind_o, dimp_i("h", px, dax(0)))),
      StructuralError);
  // over a fresh variable it goes through
  HoSequent seq = check_derivation(alg, {{"u", px}}, dforall_i("w", kI(), dax(0)));
  CHECK(seq.conclusion->node == HoExpr::Forall);
  // elimination instantiates
  HoSequent inst = check_derivation(
      alg, {{"u", px}},
      dforall_e(econst("zero", kI()), dforall_i("w", kI(), dax(0))));
  CHECK(alpha_equal(inst.conclusion, px));
}

TEST_CASE("satisfaction of sequents") {
  Koca alg = boolean_koca(2);
  Interp in = z3_interp(alg);
  HoSignature& sig = in.sig;
  Expr psz = parse_homega(sig, "p (succ zero)");  // denotes ⊥

  HoSequent seq = check_derivation(alg, {{"u", psz}}, dax(0));
  CHECK(satisfies(alg, in, seq).satisfied);

  // corrupting the realizer to ⊤ breaks satisfaction with a witness
  HoSequent bad = seq;
  bad.realizer = tconst(alg.k);
  SatisfyOutcome out = satisfies(alg, in, bad);
  CHECK(!out.satisfied);
  CHECK(!out.witness.empty());
}

TEST_CASE("adequacy enumeration") {
  Koca alg = boolean_koca(2);
  Interp in = z3_interp(alg);
  HoSignature& sig = in.sig;
  AdequacyOptions opt;
  opt.formula_pool = {parse_homega(sig, "p zero"), parse_homega(sig, "p (succ zero)"),
                      econst("bot", kind_o)};
  opt.witness_pool = {econst("zero", kI()), evar("v0", kI())};
  opt.gen_vars = {{"v0", kI()}};

  SUBCASE("depth one is the axiom rule only") {
    opt.depth = 1;
    Report rep = adequacy_suite(alg, in, opt);
    CHECK(rep.all_passed());
    CHECK(rep.checks[0].cases == 3);  // one ax per singleton root context
  }
  SUBCASE("depth three covers every rule") {
    opt.depth = 3;
    Report rep = adequacy_suite(alg, in, opt);
    CHECK(rep.all_passed());
    CHECK(rep.checks[0].cases > 100);
  }
  SUBCASE("empty pools are vacuous") {
    AdequacyOptions empty;
    empty.depth = 3;
    Report rep = adequacy_suite(alg, in, empty);
    CHECK(rep.all_passed());
  }
}

TEST_CASE("leibniz equality realizer") {
  Koca alg = boolean_koca(2);
  Interp in = z3_interp(alg);
  HoSignature& sig = in.sig;
  Expr zero = econst("zero", kI());
  Expr s3 = parse_homega(sig, "succ (succ (succ zero))");

  SUBCASE("syntactically equal sides") {
    CHECK(leibniz_check(alg, in, zero, zero).all_passed());
  }
  SUBCASE("equal denotations in the wraparound model") {
    REQUIRE(interpret(in, s3) == interpret(in, zero));
    CHECK(leibniz_check(alg, in, zero, s3).all_passed());
  }
  SUBCASE("distinct denotations are skipped by the guard") {
    Expr s1 = parse_homega(sig, "succ zero");
    Report rep = leibniz_check(alg, in, zero, s1);
    CHECK(rep.all_passed());
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].cases == 0);
    CHECK(rep.checks[0].note.has_value());
  }
}

TEST_CASE("arithmetic checks") {
  Koca alg = boolean_koca(2);

  SUBCASE("wraparound successor reports the honest outcome") {
    Interp in = z3_interp(alg);
    Report rep = pa_axioms_check(alg, in);
    CHECK(rep.all_passed());
    const CheckResult* honest = rep.find("succ-nonzero-honest");
    REQUIRE(honest != nullptr);
    CHECK(honest->note.has_value());
    CHECK(rep.find("succ-nonzero-realized") == nullptr);
    CHECK(rep.find("nat-relativized-induction")->passed);
  }
  SUBCASE("a successor that avoids zero satisfies the axiom") {
    Interp in = z3_interp(alg);
    // saturating successor: 0,1,2 -> 1,2,2
    in.const_values["succ"] = 1 + 2 * 3 + 2 * 9;
    Report rep = pa_axioms_check(alg, in);
    CHECK(rep.all_passed());
    CHECK(rep.find("succ-nonzero-realized") != nullptr);
    CHECK(rep.find("succ-nonzero-honest") == nullptr);
  }
  SUBCASE("one-point base kind") {
    Interp in;
    in.alg = &alg;
    in.sig.base_kinds = {"I"};
    in.sig.consts["zero"] = kI();
    in.sig.consts["succ"] = karrow(kI(), kI());
    in.kind_sizes["I"] = 1;
    in.const_values["zero"] = 0;
    in.const_values["succ"] = 0;
    Report rep = pa_axioms_check(alg, in);
    CHECK(rep.all_passed());
  }
}

TEST_CASE("theory membership") {
  Koca alg = boolean_koca(2);
  Interp in = z3_interp(alg);
  HoSignature& sig = in.sig;

  auto found = theory_member(alg, in, parse_homega(sig, "p zero => p zero"));
  REQUIRE(found.has_value());
  CHECK(*found == alg.n() - 1);

  CHECK(!theory_member(alg, in, parse_homega(sig, "p (succ zero)")).has_value());
  CHECK(!theory_member(alg, in, econst("bot", kind_o)).has_value());

  Expr open = eapp(econst("p", sig.consts["p"]), evar("x", kI()));
  CHECK_THROWS_AS((void)theory_member(alg, in, open), ContractError);
}

TEST_CASE("quantification over a function kind") {
  Koca alg = boolean_koca(2);
  Interp in = z3_interp(alg);
  HoSignature& sig = in.sig;
  // g zero ranges over all of I as g ranges over I -> I, so quantifying the
  // image collapses to quantifying the point
  Expr over_fun = parse_homega(sig, "forall g:I -> I. p (g zero)");
  Expr over_pt = parse_homega(sig, "forall x:I. p x");
  CHECK(interpret(in, over_fun) == interpret(in, over_pt));
}

TEST_CASE("function kinds respect the materialization guard") {
  Koca alg = boolean_koca(2);
  Interp in = z3_interp(alg);
  in.caps.max_fun_kind = 10;
  CHECK_THROWS_AS((void)in.dom_size(karrow(kI(), karrow(kI(), kI()))), ResourceError);
}
