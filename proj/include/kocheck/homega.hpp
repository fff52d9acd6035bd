#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kocheck/ioca.hpp"
#include "kocheck/report.hpp"

namespace kocheck {

// ---- kinds ----------------------------------------------------------------

struct HKind;
using KindPtr = std::shared_ptr<const HKind>;

// Kind grammar: base constants (o distinguished) and right-associative arrows.
struct HKind {
  std::string base;   // nonempty for base kinds
  KindPtr src, tgt;   // set for arrow kinds
  bool is_arrow() const { return src != nullptr; }
};

KindPtr kbase(const std::string& name);
KindPtr karrow(KindPtr src, KindPtr tgt);
extern const KindPtr kind_o;
bool kind_equal(const KindPtr& a, const KindPtr& b);
std::string show_kind(const KindPtr& k);

// ---- expressions ----------------------------------------------------------

struct HoExpr;
using Expr = std::shared_ptr<const HoExpr>;

// Kind-annotated syntax tree; formulas are the expressions of kind o.
struct HoExpr {
  enum Node { Var, ConstE, Lam, App, Implies, Forall };
  Node node;
  std::string name;   // Var/ConstE name; Lam/Forall bound variable
  KindPtr kind;       // kind of the whole expression
  KindPtr binder;     // Lam/Forall: kind of the bound variable
  Expr a, b;          // children
};

Expr evar(const std::string& name, KindPtr k);
Expr econst(const std::string& name, KindPtr k);
Expr elam(const std::string& var, KindPtr var_kind, Expr body);
Expr eapp(Expr fn, Expr arg);                 // validates kinds
Expr eimplies(Expr a, Expr b);                // both of kind o
Expr eforall(const std::string& var, KindPtr var_kind, Expr body);

bool alpha_equal(const Expr& a, const Expr& b);
std::string show_expr(const Expr& e);
// Free variables with their kinds, in first-occurrence order.
std::vector<std::pair<std::string, KindPtr>> free_vars(const Expr& e);
bool var_free_in(const Expr& e, const std::string& name);
// Capture-avoiding substitution of `value` for the free variable `name`.
Expr subst_expr(const Expr& e, const std::string& name, const Expr& value);

// Leibniz equality at the kind of m: ∀y:σ→o. (y m ⇒ y n).
Expr leibniz_eq(const Expr& m, const Expr& n);

// ---- parsing --------------------------------------------------------------

struct HoSignature {
  std::map<std::string, KindPtr> consts;
  std::vector<std::string> base_kinds;  // besides o

  bool has_base(const std::string& k) const;
};

struct HoParseError : StructuralError {
  int offset;
  HoParseError(const std::string& what, int off)
      : StructuralError(what + " at offset " + std::to_string(off)), offset(off) {}
};

KindPtr parse_kind(const HoSignature& sig, const std::string& text);
// Surface syntax: `\x:k. e`, `forall x:k. e`, application by juxtaposition
// (left-associative), `=>` right-associative, `==` expands to the Leibniz
// schema, `bot` the falsum constant. Unknown identifiers are unbound-variable
// errors; binders introduce variables.
Expr parse_homega(const HoSignature& sig, const std::string& text);

// ---- semantics ------------------------------------------------------------

// Finite interpretation: base kinds get enumerated finite sets, o is the
// carrier, arrow kinds the full (guarded) function space. Values are indices
// into the enumeration of their kind.
struct Interp {
  const Koca* alg = nullptr;
  HoSignature sig;
  std::map<std::string, long> kind_sizes;
  std::map<std::string, long> const_values;
  Caps caps;

  long dom_size(const KindPtr& k) const;
};

// f and x as enumeration indices; function application by digit extraction.
long sem_apply(long f, long x, long src_size, long tgt_size);

using Assignment = std::vector<std::pair<std::string, long>>;

long interpret(const Interp& in, const Expr& e, const Assignment& assign = {});

// ---- typing derivations ---------------------------------------------------

struct Declaration {
  std::string var;
  Expr formula;  // kind o
};

struct HoSequent {
  std::vector<Declaration> context;
  Term realizer;  // algebra term over the context variables
  Expr conclusion;
};

struct DerivationNode;
using Deriv = std::shared_ptr<const DerivationNode>;

struct DerivationNode {
  enum Rule { Ax, ImpI, ImpE, ForallI, ForallE };
  Rule rule;
  int ax_index = -1;    // Ax
  std::string var;      // ImpI: sequent variable; ForallI: expression variable
  KindPtr var_kind;     // ForallI
  Expr assume;          // ImpI
  Expr witness;         // ForallE
  Deriv d1, d2;
};

Deriv dax(int index);
Deriv dimp_i(const std::string& var, Expr assume, Deriv sub);
Deriv dimp_e(Deriv fn, Deriv arg);
Deriv dforall_i(const std::string& var, KindPtr kind, Deriv sub);
Deriv dforall_e(Expr witness, Deriv sub);

// Recompute every sequent bottom-up including the extracted realizer:
// ax gives the hypothesis variable, →i wraps e(λ*x p), →e applies, the
// quantifier rules keep the realizer. Violations (premise mismatch, the ∀i
// freshness side condition) raise StructuralError.
HoSequent check_derivation(const Koca& alg, const std::vector<Declaration>& context,
                           const Deriv& d);

struct SatisfyOutcome {
  bool satisfied = true;
  std::uint64_t cases = 0;
  std::string witness;
};

// Semantic satisfaction: over every assignment of the free expression
// variables and every tuple of carrier elements below the interpreted
// context formulas, the realizer evaluates below the conclusion.
SatisfyOutcome satisfies(const Koca& alg, const Interp& in, const HoSequent& seq);

// Enumerate derivations up to a depth over finite pools and assert
// satisfaction of every conclusion.
struct AdequacyOptions {
  std::vector<Expr> formula_pool;
  std::vector<Expr> witness_pool;  // ∀e instantiation candidates
  std::vector<std::pair<std::string, KindPtr>> gen_vars;  // extra ∀i candidates
  int depth = 3;
  int max_context = 3;
};
Report adequacy_suite(const Koca& alg, const Interp& in, const AdequacyOptions& opt);

// e(λ*x.x) realizes m =_σ n whenever the two sides denote the same value.
Report leibniz_check(const Koca& alg, const Interp& in, const Expr& m, const Expr& n);

// The arithmetic checks: equational axioms through leibniz_check, the
// succ≠0 axiom evaluated honestly (the realizer claim is asserted exactly
// when the model satisfies succ s ≠ 0 for every s), and e(λ*x.x) realizing
// ∀z(N(z) ⇒ N(z)).
Report pa_axioms_check(const Koca& alg, const Interp& in,
                       const std::string& zero_name = "zero",
                       const std::string& succ_name = "succ");

// The totality predicate ∀x:I→o (∀y(x y ⇒ x (succ y)) ⇒ (x zero ⇒ x z)).
Expr nat_formula(const HoSignature& sig, const std::string& zero_name,
                 const std::string& succ_name, const std::string& z_var);

// First pool element below the interpretation of a closed formula.
std::optional<int> theory_member(const Koca& alg, const Interp& in, const Expr& f);

}  // namespace kocheck
