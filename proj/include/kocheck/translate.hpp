#pragma once

#include "kocheck/aks.hpp"
#include "kocheck/ioca.hpp"

namespace kocheck {

// AKS → KOCA (the construction on closed stack sets): carrier is the closed
// stack sets ordered by reverse inclusion, app = ∘⊥, imp = ⇒⊥, the
// combinators are {K}^⊥, {S}^⊥, {cc}^⊥, {EE}^⊥, and Φ collects the closed
// sets realized by some quasi-proof. Reverse inclusion is materialized as an
// explicit order table. Throws ResourceError past the closed-set cap.
Koca aks_to_koca(const Aks& a, const Caps& caps = Caps{});

// KOCA → AKS: terms = stacks = carrier, pole = ≤, push = imp,
// store(π) = π→⊥, K = e(B e k), S = e(B(B e (B e)) s), cc = e c with
// B = s(ks)k, quasi-proofs = Φ.
Aks koca_to_aks(const Koca& a);

// The four clauses relating a KOCA to its induced AKS: perps are down/up
// closures of inf/sup, principal filters are exactly the closed stack sets
// with a ↦ ↑a and P ↦ inf P mutually inverse, and inf(P⇒⊥Q) = inf P → inf Q.
Report galois_check(const Koca& a, const Caps& caps = Caps{});

struct PairScanOptions {
  int index_size = 1;
  Caps caps;
  std::uint64_t samples = 256;  // when past the exhaustive cap
  std::uint64_t seed = 0;
};

// Predicates into the closed stack sets of an AKS carry two entailments:
// the uniform-realizer order of the derived KOCA (in application form and,
// via the adjunctor, implication form) and the quasi-proof order of the AKS
// itself. Checks the three agree on every predicate pair.
Report streicher_iso_check(const Aks& a, const PairScanOptions& opt = {});

// Post-composition with a ↦ ↑a preserves and reflects entailment between
// predicates valued in a KOCA and in its induced AKS.
Report roundtrip_tripos_equivalence(const Koca& a, const PairScanOptions& opt = {});

}  // namespace kocheck
