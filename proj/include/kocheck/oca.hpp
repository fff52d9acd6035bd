#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kocheck/base.hpp"
#include "kocheck/report.hpp"

namespace kocheck {

// Filtered ordered combinatory algebra over a finite carrier. leq_rows[a] has
// bit b set iff a ≤ b.
struct FilteredOca {
  std::vector<std::string> carrier;
  std::vector<Mask> leq_rows;
  std::vector<std::uint16_t> app_table;  // [a * n + b]
  int k = 0, s = 0;
  Mask phi = 0;

  int n() const { return static_cast<int>(carrier.size()); }
  bool leq(int a, int b) const { return has_bit(leq_rows[a], b); }
  int apply(int a, int b) const { return app_table[a * n() + b]; }
  bool in_phi(int a) const { return has_bit(phi, a); }
  const std::string& name(int a) const { return carrier[a]; }
};

// Symbolic term over an algebra: constants, variables, left-associative
// application.
struct CombTerm;
using Term = std::shared_ptr<const CombTerm>;

struct CombTerm {
  enum Kind { Const, Var, App };
  Kind kind;
  int elem = -1;        // Const
  std::string var;      // Var
  Term fn, arg;         // App
};

Term tconst(int elem);
Term tvar(std::string name);
Term tapp(Term fn, Term arg);
// Left-associated application of a chain of terms.
Term tapps(std::initializer_list<Term> chain);

bool term_equal(const Term& a, const Term& b);
std::string show_term(const FilteredOca& o, const Term& t);
bool contains_var(const Term& t, const std::string& v);
// Constants appearing in t, as a carrier mask.
Mask term_constants(const Term& t);
Term substitute(const Term& t, const std::string& v, const Term& u);

// Surface syntax: identifiers, whitespace application, parentheses,
// left-associative. Identifiers naming carrier elements become constants,
// anything else a variable.
Term parse_comb_term(const FilteredOca& o, const std::string& text);

// Bracket abstraction: λ*y(y) = s k k, λ*y(x) = k x for other leaves,
// λ*y(p q) = s (λ*y p) (λ*y q). The result never mentions y and satisfies
// (λ*y t) u ≤ t{y:=u} after evaluation.
Term lambda_star(const FilteredOca& o, const std::string& v, const Term& t);

// Evaluate a closed term by the app table. Free variables or foreign
// constants raise StructuralError.
int eval_term(const FilteredOca& o, const Term& t);
// Same, with an assignment for variables.
int eval_term_env(const FilteredOca& o, const Term& t,
                  const std::vector<std::pair<std::string, int>>& env);

// app-closure of a carrier subset.
Mask app_closure(const FilteredOca& o, Mask seed);

// The λ*-defined combinator family of the basic lemma.
struct BasicCombinators {
  int b, i, cflip, w, tt, ff, pair, p0, p1;
};
BasicCombinators derived_basic_combinators(const FilteredOca& o);
// a(r,s) = λ*x(pair (r x) (s x)) and d(f) = λ*x(f (p0 x) (p1 x)), evaluated.
int comb_a(const FilteredOca& o, int r, int s);
int comb_d(const FilteredOca& o, int f);

// Exhaustive check of the defining inequalities of the basic combinators.
Report check_basic_combinators(const FilteredOca& o);

// Verify the FilteredOca invariants: partial order, monotone application,
// K/S axioms, filter containing k,s and app-closed.
Report check_oca(const FilteredOca& o);

// Realizer search pool: Φ in carrier load order, then the evaluated derived
// combinators (deduplicated), when include_derived is set.
std::vector<int> realizer_pool(const FilteredOca& o, bool include_derived = true);

// First f in the pool with f a ≤ b, if any. a ⊑_Φ b iff this is nonempty.
std::optional<int> entails(const FilteredOca& o, int a, int b,
                           bool include_derived = true);

// Meet-semilattice structure: a∧b := pair a b, ⊤ := k, with the realizers
// p0, p1, a(r,s) and kk checked for every instance.
Report meet_top_check(const FilteredOca& o);

// Hilbert-style proofs over implicational formulas, axiom schemes K, S and
// Peirce, and modus ponens.
struct PropFormula;
using Prop = std::shared_ptr<const PropFormula>;
struct PropFormula {
  int var = -1;   // leaf when >= 0
  Prop lhs, rhs;  // implication otherwise
};
Prop pvar(int i);
Prop pimp(Prop a, Prop b);
bool prop_equal(const Prop& a, const Prop& b);

struct HilbertProof;
using HProof = std::shared_ptr<const HilbertProof>;
struct HilbertProof {
  enum Rule { AxK, AxS, AxPeirce, Mp };
  Rule rule;
  std::vector<Prop> inst;  // instantiating formulas for axiom schemes
  HProof fn, arg;          // modus ponens premises: fn : φ→ψ, arg : φ
};
HProof ax_k(Prop a, Prop b);
HProof ax_s(Prop a, Prop b, Prop c);
HProof ax_peirce(Prop a, Prop b);
HProof mp(HProof fn, HProof arg);

// Formula proved by the tree (validating rule applications), and the proof
// term over the combinator constants: axiom leaves map to k/s/c, modus
// ponens to application. Malformed trees raise StructuralError.
Prop hilbert_conclusion(const HProof& p);
Term hilbert_eval(const HProof& p, int k_elem, int s_elem, int c_elem);

// Handy tiny instances.
FilteredOca trivial_oca();          // one element
FilteredOca boolean_meet_oca(int atoms);  // 2^atoms elements, app = meet, k=s=⊤

}  // namespace kocheck
