#pragma once

#include <optional>
#include <vector>

#include "kocheck/ioca.hpp"
#include "kocheck/report.hpp"

namespace kocheck {

// Predicate on a finite index set, valued in the carrier.
struct Predicate {
  std::vector<std::uint16_t> values;  // one element per index point
  int size() const { return static_cast<int>(values.size()); }
  int at(int i) const { return values[i]; }
};

inline bool operator==(const Predicate& a, const Predicate& b) {
  return a.values == b.values;
}

// Total function between finite index sets.
struct FiniteFunction {
  int source = 0, target = 0;
  std::vector<std::uint16_t> graph;  // graph[j] in [0, target)
  int at(int j) const { return graph[j]; }
};

FiniteFunction identity_fun(int n);
FiniteFunction compose(const FiniteFunction& f, const FiniteFunction& g);  // f ∘ g

struct PullbackSquare {
  FiniteFunction p;  // P → J
  FiniteFunction q;  // P → K
  FiniteFunction f;  // J → I
  FiniteFunction g;  // K → I
};

// P = {(j,k) : f(j) = g(k)} with the projections.
PullbackSquare canonical_pullback(const FiniteFunction& f, const FiniteFunction& g);
// Unique-existence condition of a pullback of sets.
bool validate_pullback(const PullbackSquare& sq);

// First uniform realizer of φ ⊢ ψ from the Φ-ordered search pool.
std::optional<int> entails_pred(const FilteredOca& o, const Predicate& phi,
                                const Predicate& psi, bool include_derived = true);

Predicate reindex(const FiniteFunction& f, const Predicate& phi);
Predicate meet_pred(const FilteredOca& o, const Predicate& phi, const Predicate& psi);
Predicate top_pred(const FilteredOca& o, int index_size);
Predicate imp_pred(const Ioca& x, const Predicate& phi, const Predicate& psi);

// ∀_f(ψ)(i) = inf of ψ over the fiber of i; an empty fiber yields the
// lattice top (the empty infimum).
Predicate forall_along(const Ioca& x, const FiniteFunction& f, const Predicate& psi);

// All |A|^size predicates, odometer order.
std::vector<Predicate> all_predicates(const FilteredOca& o, int index_size);

// Entailment is a preorder with constructive realizers: i for reflexivity,
// b-composition for transitivity.
Report preorder_check(const FilteredOca& o, int index_size);

// Reindexing is functorial and preserves meets and top definitionally.
Report reindex_check(const FilteredOca& o, int index_size);

// Predicate-level Heyting law with the explicit realizer constructions.
Report heyting_pred_check(const Ioca& x, int index_size);

// Same-realizer transfer across the ∀ adjunction: every pool member
// realizes f*φ ⊢ ψ exactly when it realizes φ ⊢ ∀_f ψ.
Report forall_adjunction_check(const Ioca& x, const FiniteFunction& f);

// g*(∀_f φ) = ∀_q(p* φ) pointwise on a validated square, for every φ.
Report beck_chevalley_check(const Ioca& x, const PullbackSquare& sq);

// χ_φ = φ reindexes the identity predicate back to φ on the nose.
Report generic_predicate_check(const FilteredOca& o, int max_index_size);

// c uniformly realizes ¬¬φ ⊢ φ.
Report classical_check(const Koca& a, int index_size);

}  // namespace kocheck
