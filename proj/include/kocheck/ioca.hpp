#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kocheck/oca.hpp"
#include "kocheck/report.hpp"

namespace kocheck {

// Implicative OCA: adds an implication table (antitone/monotone), an
// adjunctor e, half adjunction (PA) and its converse (E), over an
// inf-complete carrier.
struct Ioca : FilteredOca {
  std::vector<std::uint16_t> imp_table;  // [a * n + b]
  int e = 0;

  int impl(int a, int b) const { return imp_table[a * n() + b]; }
};

// Krivine OCA: an IOCA with a Peirce element c ≤ ((a→b)→a)→a.
struct Koca : Ioca {
  int c = 0;
};

// Minimal presentation: order + implication + filter; application and the
// four combinators are the infima prescribed by the properness conditions.
struct ProperQuadruple {
  std::vector<std::string> carrier;
  std::vector<Mask> leq_rows;
  std::vector<std::uint16_t> imp_table;
  Mask phi = 0;

  int n() const { return static_cast<int>(carrier.size()); }
  bool leq(int a, int b) const { return has_bit(leq_rows[a], b); }
  int impl(int a, int b) const { return imp_table[a * n() + b]; }
};

struct PropernessError : std::runtime_error {
  std::string clause;
  PropernessError(std::string clause_, const std::string& what)
      : std::runtime_error(what), clause(std::move(clause_)) {}
};

// Greatest lower / least upper bound of a carrier subset, if one exists.
std::optional<int> inf_of(const std::vector<Mask>& leq_rows, Mask subset);
std::optional<int> sup_of(const std::vector<Mask>& leq_rows, Mask subset);

// inf of the whole carrier; the default ⊥ parameter of the classical checks.
int bottom_of(const Ioca& x);

Report check_ioca(const Ioca& x);
Report check_koca(const Koca& x);

// Derive the KOCA of a proper quadruple: app(a,b) = inf{c : a ≤ b→c} and
// k,s,e,c the prescribed infima. Throws PropernessError naming the violated
// clause when the quadruple is not proper (or not a complete lattice).
Koca from_proper_quadruple(const ProperQuadruple& q);

// The two clauses of the Heyting-preorder theorem, with the explicit
// realizers of the proof (e·g, d(f), and b e (b (b f) pair)) evaluated and
// verified rather than mere existence checks.
Report heyting_check(const Ioca& x);

// c realizes ((a→⊥)→⊥) ⊑ a for every a.
Report double_negation_realizer(const Koca& x, std::optional<int> bot = std::nullopt);

// Complete Boolean algebra on 2^atoms elements: leq is subset order on atom
// masks, imp is classical implication, Φ = {⊤}.
ProperQuadruple boolean_quadruple(int atoms);
Koca boolean_koca(int atoms);

// n-element chain with Heyting implication (a→b = ⊤ if a ≤ b, else b) and
// Φ = {⊤}. Proper only when Peirce's inf lands in Φ, which fails for n ≥ 3.
ProperQuadruple chain_quadruple(int n);
// The OCA fragment of the chain: app = min, k = s = ⊤.
FilteredOca chain_meet_oca(int n);

Koca trivial_koca();

}  // namespace kocheck
