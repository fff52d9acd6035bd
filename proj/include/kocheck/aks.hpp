#pragma once

#include <string>
#include <vector>

#include "kocheck/lattice.hpp"
#include "kocheck/report.hpp"

namespace kocheck {

// Abstract Krivine structure: realizability lattice with push, plus term
// application, a store map from stacks back to terms, an app-closed set of
// quasi-proofs, and the K/S/cc combinators, subject to axioms (S1)-(S5).
struct Aks {
  RealizabilityLattice rl;
  std::vector<std::uint8_t> push;   // [t * n_stacks + p] -> stack
  std::vector<std::uint8_t> app;    // [t * n_terms + u] -> term
  std::vector<std::uint8_t> store;  // [p] -> term (k_π)
  Mask qp = 0;
  int comb_k = 0, comb_s = 0, comb_cc = 0;

  int n_terms() const { return rl.n_terms(); }
  int n_stacks() const { return rl.n_stacks(); }
  int push_at(int t, int p) const { return push[t * rl.n_stacks() + p]; }
  int app_at(int t, int u) const { return app[t * rl.n_terms() + u]; }
  bool orth(int t, int p) const { return rl.in_pole(t, p); }
  // t ⊥ P: t is orthogonal to every stack of P.
  bool orth_set(int t, StackSet p) const { return (rl.pole_rows[t] & p.bits) == p.bits; }

  PushedLattice pushed() const { return PushedLattice{rl, push}; }
};

// I = SKK, B = S(KS)K, E = S(KI), and the adjunctor EE, app-evaluated.
struct DerivedCombinators {
  int i, b, e, ee;
};
DerivedCombinators derived_combinators(const Aks& a);

// {t·u : t∈L, u∈M} as a term set.
TermSet app_set(const Aks& a, TermSet l, TermSet m);

// The stack-set operations need only a push map, not the full structure:
// P∘⊥Q = ((^⊥(^⊥Q ⇝ P)))^⊥ and P⇒Q = ^⊥P·Q with its closure P⇒⊥Q. The
// half adjunction (Q⇒⊥R ⊆ P implies R ⊆ P∘⊥Q) already holds here.
StackSet op_circ(const PushedLattice& lat, StackSet p, StackSet q);
StackSet op_imp_raw(const PushedLattice& lat, StackSet p, StackSet q);
StackSet op_imp(const PushedLattice& lat, StackSet p, StackSet q);

StackSet op_circ(const Aks& a, StackSet p, StackSet q);
StackSet op_imp_raw(const Aks& a, StackSet p, StackSet q);
StackSet op_imp(const Aks& a, StackSet p, StackSet q);
// P⋄Q = ((^⊥P)(^⊥Q))^⊥; accepts arbitrary subsets, result always closed.
StackSet op_diamond(const Aks& a, StackSet p, StackSet q);

// Exhaustive verification of (S1)-(S5) plus the structural requirements
// (quasi-proofs app-closed and containing the combinators). Failures carry
// the lexicographically first witness in load order.
Report check_aks_axioms(const Aks& a);

struct LemmaOptions {
  bool widen_to_all_subsets = false;  // quantify set lemmas over all of P(Π)
  Caps caps;
};

// Executable checks of the derived-combinator lemmas, the ∘⊥/⋄ comparison,
// the Sη-rule consequences, and both halves of the adjunction property,
// quantified over the closed stack sets (or all subsets when widened).
Report verify_aks_lemmas(const Aks& a, const LemmaOptions& opt = LemmaOptions{});

// Single-point structure: one term, one stack, full pole. Passes everything.
Aks single_point_aks();

}  // namespace kocheck
