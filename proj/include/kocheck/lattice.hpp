#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kocheck/base.hpp"
#include "kocheck/report.hpp"

namespace kocheck {

// Membership vectors over the term list / stack list of a lattice. Kept as
// distinct types so term sets and stack sets cannot be mixed up.
struct TermSet {
  Mask bits = 0;
};
struct StackSet {
  Mask bits = 0;
};

inline bool operator==(TermSet a, TermSet b) { return a.bits == b.bits; }
inline bool operator==(StackSet a, StackSet b) { return a.bits == b.bits; }

// Finite realizability lattice: term list, stack list, and the pole relation
// between them. Identifier order is load order; all set computations are in
// terms of that order.
struct RealizabilityLattice {
  std::vector<std::string> terms;   // Λ
  std::vector<std::string> stacks;  // Π
  std::vector<Mask> pole_rows;      // per term, mask of orthogonal stacks
  std::vector<Mask> pole_cols;      // per stack, mask of orthogonal terms

  int n_terms() const { return static_cast<int>(terms.size()); }
  int n_stacks() const { return static_cast<int>(stacks.size()); }
  bool in_pole(int t, int p) const { return has_bit(pole_rows[t], p); }

  TermSet all_terms() const { return {full_mask(n_terms())}; }
  StackSet all_stacks() const { return {full_mask(n_stacks())}; }

  std::string show_terms(TermSet s) const;
  std::string show_stacks(StackSet s) const;
};

// Build from an explicit pair list; validates sizes and duplicate names.
RealizabilityLattice make_lattice(std::vector<std::string> terms,
                                  std::vector<std::string> stacks,
                                  const std::vector<std::pair<int, int>>& pole);

// L^⊥ = stacks orthogonal to every term of L. Empty L gives all of Π.
StackSet perp_of_terms(const RealizabilityLattice& lat, TermSet l);

// ^⊥P = terms orthogonal to every stack of P. Empty P gives all of Λ.
TermSet perp_of_stacks(const RealizabilityLattice& lat, StackSet p);

// (^⊥P)^⊥ — the biorthogonal closure; idempotent, contains P.
StackSet closure_stacks(const RealizabilityLattice& lat, StackSet p);
TermSet closure_terms(const RealizabilityLattice& lat, TermSet l);

inline bool is_closed(const RealizabilityLattice& lat, StackSet p) {
  return closure_stacks(lat, p).bits == p.bits;
}

// All biorthogonally closed stack sets, computed as the intersections of the
// generators {t}^⊥ together with Π (the empty intersection). Ascending mask
// order. Throws ResourceError past caps.max_enum_stacks.
std::vector<StackSet> enumerate_closed_stack_sets(const RealizabilityLattice& lat,
                                                  const Caps& caps = Caps{});

// Test-side oracle: scan every subset of Π for the closure fixed point.
// Throws ResourceError past caps.max_brute_stacks.
std::vector<StackSet> enumerate_closed_brute(const RealizabilityLattice& lat,
                                             const Caps& caps = Caps{});

// Infimum (intersection) and supremum (closure of union) of a family of
// closed stack sets, under plain inclusion. Empty family: inf = Π and
// sup = closure(∅). Non-closed members are a contract violation.
struct SupInf {
  StackSet inf_set;
  StackSet sup_set;
};
SupInf sup_inf(const RealizabilityLattice& lat, const std::vector<StackSet>& xs);

// A lattice together with a push map Λ×Π→Π.
struct PushedLattice {
  RealizabilityLattice rl;
  std::vector<std::uint8_t> push;  // [t * n_stacks + p] -> stack index

  int push_at(int t, int p) const { return push[t * rl.n_stacks() + p]; }
};

// L·P = {push(t,π) : t∈L, π∈P}
StackSet push_set(const PushedLattice& lat, TermSet l, StackSet p);

// L⇝P = {π : L·π ⊆ P}; adjoint to push_set: L·P ⊆ Q iff P ⊆ L⇝Q.
StackSet right_conductor(const PushedLattice& lat, TermSet l, StackSet p);

// Closure-algebra suite on one instance: enumeration against the brute-force
// oracle, antitonicity, De Morgan, triple-perp, the order-reversing closed
// bijection, and sup/inf bounds. Exhaustive over subsets when small, seeded
// samples past caps.max_brute_stacks.
Report lattice_closure_suite(const RealizabilityLattice& lat, const Caps& caps,
                             std::uint64_t seed = 0);

}  // namespace kocheck
