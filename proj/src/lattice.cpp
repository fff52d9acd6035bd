#include "kocheck/lattice.hpp"

#include <algorithm>
#include <set>

namespace kocheck {

std::string RealizabilityLattice::show_terms(TermSet s) const {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n_terms(); ++i)
    if (has_bit(s.bits, i)) {
      if (!first) out += ",";
      out += terms[i];
      first = false;
    }
  return out + "}";
}

std::string RealizabilityLattice::show_stacks(StackSet s) const {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n_stacks(); ++i)
    if (has_bit(s.bits, i)) {
      if (!first) out += ",";
      out += stacks[i];
      first = false;
    }
  return out + "}";
}

RealizabilityLattice make_lattice(std::vector<std::string> terms,
                                  std::vector<std::string> stacks,
                                  const std::vector<std::pair<int, int>>& pole) {
  if (terms.size() > kMaxUniverse || stacks.size() > kMaxUniverse)
    throw ResourceError("lattice carrier exceeds " + std::to_string(kMaxUniverse));
  {
    std::set<std::string> seen(terms.begin(), terms.end());
    if (seen.size() != terms.size()) throw StructuralError("duplicate term identifier");
    std::set<std::string> seen2(stacks.begin(), stacks.end());
    if (seen2.size() != stacks.size()) throw StructuralError("duplicate stack identifier");
  }
  RealizabilityLattice lat;
  lat.terms = std::move(terms);
  lat.stacks = std::move(stacks);
  lat.pole_rows.assign(lat.terms.size(), 0);
  lat.pole_cols.assign(lat.stacks.size(), 0);
  for (auto [t, p] : pole) {
    if (t < 0 || t >= lat.n_terms() || p < 0 || p >= lat.n_stacks())
      throw StructuralError("pole entry out of range");
    lat.pole_rows[t] |= Mask{1} << p;
    lat.pole_cols[p] |= Mask{1} << t;
  }
  return lat;
}

StackSet perp_of_terms(const RealizabilityLattice& lat, TermSet l) {
  if (l.bits & ~full_mask(lat.n_terms()))
    throw StructuralError("term set does not fit the lattice");
  Mask acc = full_mask(lat.n_stacks());
  Mask rem = l.bits;
  while (rem) {
    int t = __builtin_ctzll(rem);
    rem &= rem - 1;
    acc &= lat.pole_rows[t];
  }
  return {acc};
}

TermSet perp_of_stacks(const RealizabilityLattice& lat, StackSet p) {
  if (p.bits & ~full_mask(lat.n_stacks()))
    throw StructuralError("stack set does not fit the lattice");
  Mask acc = full_mask(lat.n_terms());
  Mask rem = p.bits;
  while (rem) {
    int s = __builtin_ctzll(rem);
    rem &= rem - 1;
    acc &= lat.pole_cols[s];
  }
  return {acc};
}

StackSet closure_stacks(const RealizabilityLattice& lat, StackSet p) {
  return perp_of_terms(lat, perp_of_stacks(lat, p));
}

TermSet closure_terms(const RealizabilityLattice& lat, TermSet l) {
  return perp_of_stacks(lat, perp_of_terms(lat, l));
}

std::vector<StackSet> enumerate_closed_stack_sets(const RealizabilityLattice& lat,
                                                  const Caps& caps) {
  if (lat.n_stacks() > caps.max_enum_stacks)
    throw ResourceError("closed-set enumeration bound exceeded: |stacks| = " +
                        std::to_string(lat.n_stacks()) + " > " +
                        std::to_string(caps.max_enum_stacks));
  // Closure system generated by the {t}^⊥; saturate under intersection with
  // each generator, starting from the empty intersection Π.
  std::set<Mask> known;
  known.insert(full_mask(lat.n_stacks()));
  std::vector<Mask> work(known.begin(), known.end());
  while (!work.empty()) {
    Mask cur = work.back();
    work.pop_back();
    for (int t = 0; t < lat.n_terms(); ++t) {
      Mask next = cur & lat.pole_rows[t];
      if (known.insert(next).second) work.push_back(next);
    }
  }
  std::vector<StackSet> out;
  out.reserve(known.size());
  for (Mask m : known) out.push_back({m});  // std::set gives ascending order
  return out;
}

std::vector<StackSet> enumerate_closed_brute(const RealizabilityLattice& lat,
                                             const Caps& caps) {
  if (lat.n_stacks() > caps.max_brute_stacks)
    throw ResourceError("brute-force enumeration bound exceeded");
  std::vector<StackSet> out;
  Mask top = full_mask(lat.n_stacks());
  for (Mask m = 0;; ++m) {
    if (closure_stacks(lat, {m}).bits == m) out.push_back({m});
    if (m == top) break;
  }
  return out;
}

SupInf sup_inf(const RealizabilityLattice& lat, const std::vector<StackSet>& xs) {
  Mask inf = full_mask(lat.n_stacks());
  Mask uni = 0;
  for (StackSet p : xs) {
    if (!is_closed(lat, p))
      throw ContractError("sup_inf requires closed members, got " + lat.show_stacks(p));
    inf &= p.bits;
    uni |= p.bits;
  }
  return {StackSet{inf}, closure_stacks(lat, {uni})};
}

StackSet push_set(const PushedLattice& lat, TermSet l, StackSet p) {
  Mask out = 0;
  Mask tl = l.bits;
  while (tl) {
    int t = __builtin_ctzll(tl);
    tl &= tl - 1;
    Mask ps = p.bits;
    while (ps) {
      int s = __builtin_ctzll(ps);
      ps &= ps - 1;
      out |= Mask{1} << lat.push_at(t, s);
    }
  }
  return {out};
}

StackSet right_conductor(const PushedLattice& lat, TermSet l, StackSet p) {
  Mask out = 0;
  for (int s = 0; s < lat.rl.n_stacks(); ++s) {
    bool ok = true;
    Mask tl = l.bits;
    while (tl && ok) {
      int t = __builtin_ctzll(tl);
      tl &= tl - 1;
      ok = has_bit(p.bits, lat.push_at(t, s));
    }
    if (ok) out |= Mask{1} << s;
  }
  return {out};
}

Report lattice_closure_suite(const RealizabilityLattice& lat, const Caps& caps,
                             std::uint64_t seed) {
  Report rep;
  rep.suite = "lattice-closure";
  const int nt = lat.n_terms(), ns = lat.n_stacks();
  const bool small = ns <= caps.max_brute_stacks && nt <= caps.max_brute_stacks;

  std::vector<StackSet> closed = enumerate_closed_stack_sets(lat, caps);

  auto& oracle = rep.add("enumeration-vs-brute-force");
  if (small) {
    auto brute = enumerate_closed_brute(lat, caps);
    oracle.cases = brute.size();
    bool same = brute.size() == closed.size();
    for (size_t i = 0; same && i < brute.size(); ++i) same = brute[i].bits == closed[i].bits;
    if (!same) Report::fail(oracle, "intersection method disagrees with subset scan");
  } else {
    oracle.note = "skipped: past the brute-force bound";
  }

  // subset pairs: exhaustive when small, seeded otherwise
  std::vector<std::pair<Mask, Mask>> term_pairs, stack_pairs;
  if (nt <= 8 && ns <= 8) {
    for (Mask a = 0; a <= full_mask(nt); ++a) {
      for (Mask b = 0; b <= full_mask(nt); ++b) {
        term_pairs.push_back({a, b});
        if (b == full_mask(nt)) break;
      }
      if (a == full_mask(nt)) break;
    }
    for (Mask a = 0; a <= full_mask(ns); ++a) {
      for (Mask b = 0; b <= full_mask(ns); ++b) {
        stack_pairs.push_back({a, b});
        if (b == full_mask(ns)) break;
      }
      if (a == full_mask(ns)) break;
    }
  } else {
    SplitMix64 rng(seed);
    for (int i = 0; i < 2048; ++i) {
      term_pairs.push_back({rng.next() & full_mask(nt), rng.next() & full_mask(nt)});
      stack_pairs.push_back({rng.next() & full_mask(ns), rng.next() & full_mask(ns)});
    }
  }

  auto& anti = rep.add("antitonicity");
  auto& dm = rep.add("de-morgan");
  for (auto [a, b] : term_pairs) {
    ++dm.cases;
    Mask pa = perp_of_terms(lat, {a}).bits, pb = perp_of_terms(lat, {b}).bits;
    if (perp_of_terms(lat, {a | b}).bits != (pa & pb))
      Report::fail(dm, "terms " + lat.show_terms({a}) + " " + lat.show_terms({b}));
    if ((a & b) == a) {
      ++anti.cases;
      if ((pb & pa) != pb)
        Report::fail(anti, "terms " + lat.show_terms({a}) + " within " + lat.show_terms({b}));
    }
  }
  for (auto [a, b] : stack_pairs) {
    ++dm.cases;
    Mask pa = perp_of_stacks(lat, {a}).bits, pb = perp_of_stacks(lat, {b}).bits;
    if (perp_of_stacks(lat, {a | b}).bits != (pa & pb))
      Report::fail(dm, "stacks " + lat.show_stacks({a}) + " " + lat.show_stacks({b}));
    if ((a & b) == a) {
      ++anti.cases;
      if ((pb & pa) != pb)
        Report::fail(anti, "stacks " + lat.show_stacks({a}) + " within " + lat.show_stacks({b}));
    }
  }

  auto& triple = rep.add("triple-perp");
  for (auto [a, b] : stack_pairs) {
    ++triple.cases;
    StackSet cl = closure_stacks(lat, {a});
    if (perp_of_stacks(lat, cl).bits != perp_of_stacks(lat, {a}).bits)
      Report::fail(triple, "stack set " + lat.show_stacks({a}));
    if (closure_stacks(lat, cl).bits != cl.bits)
      Report::fail(triple, "idempotence at " + lat.show_stacks({a}));
    if ((cl.bits & a) != a) Report::fail(triple, "closure not increasing");
  }

  auto& bij = rep.add("closed-bijection");
  for (auto p : closed) {
    ++bij.cases;
    TermSet l = perp_of_stacks(lat, p);
    if (closure_terms(lat, l).bits != l.bits)
      Report::fail(bij, "perp of closed set not closed: " + lat.show_stacks(p));
    if (perp_of_terms(lat, l).bits != p.bits)
      Report::fail(bij, "perp maps do not invert at " + lat.show_stacks(p));
  }

  auto& bounds = rep.add("sup-inf-bounds");
  const size_t pair_cap = 64;
  for (size_t i = 0; i < closed.size() && i < pair_cap; ++i)
    for (size_t j = 0; j < closed.size() && j < pair_cap; ++j) {
      ++bounds.cases;
      auto si = sup_inf(lat, {closed[i], closed[j]});
      if (!is_closed(lat, si.inf_set) || !is_closed(lat, si.sup_set))
        Report::fail(bounds, "bounds not closed");
      for (auto r : closed) {
        bool below = (r.bits & si.inf_set.bits) == r.bits;
        bool below_both =
            (r.bits & closed[i].bits) == r.bits && (r.bits & closed[j].bits) == r.bits;
        if (below != below_both) Report::fail(bounds, "inf not the glb");
        bool above = (si.sup_set.bits & r.bits) == si.sup_set.bits;
        bool above_both = (closed[i].bits & r.bits) == closed[i].bits &&
                          (closed[j].bits & r.bits) == closed[j].bits;
        if (above != above_both) Report::fail(bounds, "sup not the lub");
      }
    }

  return rep;
}

}  // namespace kocheck
