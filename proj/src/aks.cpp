#include "kocheck/aks.hpp"

namespace kocheck {

namespace {

std::string wit_ts(const Aks& a, std::initializer_list<std::pair<const char*, int>> terms,
                   std::initializer_list<std::pair<const char*, int>> stacks) {
  std::string out;
  for (auto& [k, v] : terms) {
    if (!out.empty()) out += " ";
    out += std::string(k) + "=" + a.rl.terms[v];
  }
  for (auto& [k, v] : stacks) {
    if (!out.empty()) out += " ";
    out += std::string(k) + "=" + a.rl.stacks[v];
  }
  return out;
}

}  // namespace

DerivedCombinators derived_combinators(const Aks& a) {
  int k = a.comb_k, s = a.comb_s;
  int i = a.app_at(a.app_at(s, k), k);
  int b = a.app_at(a.app_at(s, a.app_at(k, s)), k);
  int e = a.app_at(s, a.app_at(k, i));
  return {i, b, e, a.app_at(e, e)};
}

TermSet app_set(const Aks& a, TermSet l, TermSet m) {
  Mask out = 0;
  Mask tl = l.bits;
  while (tl) {
    int t = __builtin_ctzll(tl);
    tl &= tl - 1;
    Mask um = m.bits;
    while (um) {
      int u = __builtin_ctzll(um);
      um &= um - 1;
      out |= Mask{1} << a.app_at(t, u);
    }
  }
  return {out};
}

StackSet op_circ(const PushedLattice& lat, StackSet p, StackSet q) {
  TermSet nq = perp_of_stacks(lat.rl, q);
  StackSet rc = right_conductor(lat, nq, p);
  return closure_stacks(lat.rl, rc);
}

StackSet op_imp_raw(const PushedLattice& lat, StackSet p, StackSet q) {
  TermSet np = perp_of_stacks(lat.rl, p);
  return push_set(lat, np, q);
}

StackSet op_imp(const PushedLattice& lat, StackSet p, StackSet q) {
  return closure_stacks(lat.rl, op_imp_raw(lat, p, q));
}

StackSet op_circ(const Aks& a, StackSet p, StackSet q) {
  return op_circ(a.pushed(), p, q);
}

StackSet op_imp_raw(const Aks& a, StackSet p, StackSet q) {
  return op_imp_raw(a.pushed(), p, q);
}

StackSet op_imp(const Aks& a, StackSet p, StackSet q) {
  return op_imp(a.pushed(), p, q);
}

StackSet op_diamond(const Aks& a, StackSet p, StackSet q) {
  TermSet np = perp_of_stacks(a.rl, p);
  TermSet nq = perp_of_stacks(a.rl, q);
  return perp_of_terms(a.rl, app_set(a, np, nq));
}

Report check_aks_axioms(const Aks& a) {
  Report rep;
  rep.suite = "aks-axioms";
  const int nt = a.n_terms(), ns = a.n_stacks();

  auto& combs = rep.add("combinators-in-qp");
  combs.cases = 3;
  if (!has_bit(a.qp, a.comb_k)) Report::fail(combs, "K not in qp");
  if (!has_bit(a.qp, a.comb_s)) Report::fail(combs, "S not in qp");
  if (!has_bit(a.qp, a.comb_cc)) Report::fail(combs, "cc not in qp");

  auto& closed = rep.add("qp-app-closed");
  for (int t = 0; t < nt; ++t) {
    if (!has_bit(a.qp, t)) continue;
    for (int u = 0; u < nt; ++u) {
      if (!has_bit(a.qp, u)) continue;
      ++closed.cases;
      if (!has_bit(a.qp, a.app_at(t, u))) {
        Report::fail(closed, wit_ts(a, {{"t", t}, {"u", u}}, {}));
      }
    }
  }

  auto& s1 = rep.add("S1");
  for (int t = 0; t < nt; ++t)
    for (int s = 0; s < nt; ++s)
      for (int p = 0; p < ns; ++p) {
        ++s1.cases;
        if (a.orth(t, a.push_at(s, p)) && !a.orth(a.app_at(t, s), p))
          Report::fail(s1, wit_ts(a, {{"t", t}, {"s", s}}, {{"pi", p}}));
      }

  auto& s2 = rep.add("S2");
  for (int t = 0; t < nt; ++t)
    for (int p = 0; p < ns; ++p) {
      if (!a.orth(t, p)) continue;
      for (int s = 0; s < nt; ++s) {
        ++s2.cases;
        if (!a.orth(a.comb_k, a.push_at(t, a.push_at(s, p))))
          Report::fail(s2, wit_ts(a, {{"t", t}, {"s", s}}, {{"pi", p}}));
      }
    }

  auto& s3 = rep.add("S3");
  for (int t = 0; t < nt; ++t)
    for (int s = 0; s < nt; ++s)
      for (int u = 0; u < nt; ++u) {
        int lhs = a.app_at(a.app_at(t, u), a.app_at(s, u));
        for (int p = 0; p < ns; ++p) {
          ++s3.cases;
          if (a.orth(lhs, p) &&
              !a.orth(a.comb_s, a.push_at(t, a.push_at(s, a.push_at(u, p)))))
            Report::fail(s3, wit_ts(a, {{"t", t}, {"s", s}, {"u", u}}, {{"pi", p}}));
        }
      }

  auto& s4 = rep.add("S4");
  for (int t = 0; t < nt; ++t)
    for (int p = 0; p < ns; ++p) {
      ++s4.cases;
      if (a.orth(t, a.push_at(a.store[p], p)) && !a.orth(a.comb_cc, a.push_at(t, p)))
        Report::fail(s4, wit_ts(a, {{"t", t}}, {{"pi", p}}));
    }

  auto& s5 = rep.add("S5");
  for (int t = 0; t < nt; ++t)
    for (int p = 0; p < ns; ++p) {
      if (!a.orth(t, p)) continue;
      for (int p2 = 0; p2 < ns; ++p2) {
        ++s5.cases;
        if (!a.orth(a.store[p], a.push_at(t, p2)))
          Report::fail(s5, wit_ts(a, {{"t", t}}, {{"pi", p}, {"pi'", p2}}));
      }
    }

  return rep;
}

Report verify_aks_lemmas(const Aks& a, const LemmaOptions& opt) {
  Report rep;
  rep.suite = "aks-lemmas";
  const int nt = a.n_terms(), ns = a.n_stacks();
  const DerivedCombinators dc = derived_combinators(a);

  std::vector<StackSet> sets;
  if (opt.widen_to_all_subsets) {
    if (ns > opt.caps.max_brute_stacks)
      throw ResourceError("widened lemma scan bound exceeded");
    for (Mask m = 0; m <= full_mask(ns); ++m) {
      sets.push_back({m});
      if (m == full_mask(ns)) break;
    }
  } else {
    sets = enumerate_closed_stack_sets(a.rl, opt.caps);
    if (static_cast<int>(sets.size()) > opt.caps.max_closed_sets)
      throw ResourceError("closed-set lemma scan bound exceeded: " +
                          std::to_string(sets.size()) + " closed sets");
  }

  auto imp = [&](StackSet p, StackSet q) { return op_imp_raw(a, p, q); };
  auto impc = [&](StackSet p, StackSet q) { return op_imp(a, p, q); };
  auto sub = [](StackSet x, StackSet y) { return (x.bits & ~y.bits) == 0; };
  auto wit2 = [&](StackSet p, StackSet q) {
    return "P=" + a.rl.show_stacks(p) + " Q=" + a.rl.show_stacks(q);
  };
  auto wit3 = [&](StackSet p, StackSet q, StackSet r) {
    return wit2(p, q) + " R=" + a.rl.show_stacks(r);
  };

  auto& dqp = rep.add("derived-in-qp");
  dqp.cases = 4;
  for (int t : {dc.i, dc.b, dc.e, dc.ee})
    if (!has_bit(a.qp, t)) Report::fail(dqp, "term " + a.rl.terms[t]);

  auto& mp = rep.add("modus-ponens");
  auto& st = rep.add("s1-app-transfer");
  auto& korth = rep.add("k-imp");
  auto& sorth = rep.add("s-imp");
  auto& ccorth = rep.add("cc-imp");
  auto& iimp = rep.add("i-imp");
  auto& bimp = rep.add("b-imp");
  auto& insens = rep.add("imp-orth-insensitive");
  auto& nested = rep.add("nested-imp");
  auto& cdia = rep.add("circ-below-diamond");
  auto& s2c = rep.add("seta-diamond-window");
  auto& s3c = rep.add("seta-push-orth");
  auto& s4c = rep.add("seta-below-diamond");
  auto& s5c = rep.add("seta-imp-stable");
  auto& s6c = rep.add("seta-image-circ");
  auto& s7c = rep.add("seta-diamond-circ");
  auto& s8c = rep.add("adjunctor-bound");
  auto& half = rep.add("half-adjunction");
  auto& conv = rep.add("adjunction-converse");

  for (StackSet p : sets) {
    TermSet np = perp_of_stacks(a.rl, p);
    // E(^⊥P) and its perp show up in most Sη consequences.
    TermSet e_np = app_set(a, {Mask{1} << dc.e}, np);
    StackSet e_np_perp = perp_of_terms(a.rl, e_np);

    {  // i-imp: I ⊥ P⇒⊥P
      ++iimp.cases;
      if (!a.orth_set(dc.i, impc(p, p)))
        Report::fail(iimp, "P=" + a.rl.show_stacks(p));
    }
    {  // seta-8 / adjunctor bound: (E(^⊥P))^⊥ ⊆ (EE)^⊥ ∘⊥ P
      ++s8c.cases;
      StackSet eeperp{a.rl.pole_rows[dc.ee]};
      if (!sub(e_np_perp, op_circ(a, eeperp, p)))
        Report::fail(s8c, "P=" + a.rl.show_stacks(p));
    }
    {  // seta-6, quantified over t as well
      for (int t = 0; t < nt; ++t) {
        ++s6c.cases;
        TermSet timg = app_set(a, {Mask{1} << t}, np);
        StackSet lhs = perp_of_terms(a.rl, timg);
        StackSet et_perp{a.rl.pole_rows[a.app_at(dc.e, t)]};
        StackSet mid = right_conductor(a.pushed(), np, et_perp);
        if (!sub(lhs, mid) || !sub(mid, op_circ(a, et_perp, p))) {
          Report::fail(s6c, wit_ts(a, {{"t", t}}, {}) + " P=" + a.rl.show_stacks(p));
        }
      }
    }

    for (StackSet q : sets) {
      TermSet nq = perp_of_stacks(a.rl, q);
      StackSet dia = op_diamond(a, p, q);
      StackSet pq_raw = imp(p, q);
      StackSet pq_closed = impc(p, q);

      {  // modus ponens: t ⊥ P⇒⊥Q and u ⊥ P imply tu ⊥ Q
        for (int t = 0; t < nt; ++t) {
          if (!a.orth_set(t, pq_closed)) continue;
          Mask um = np.bits;
          while (um) {
            int u = __builtin_ctzll(um);
            um &= um - 1;
            ++mp.cases;
            if (!a.orth_set(a.app_at(t, u), q))
              Report::fail(mp, wit_ts(a, {{"t", t}, {"u", u}}, {}) + " " + wit2(p, q));
          }
        }
      }
      {  // S1 transfer: t ⊥ P, s ⊥ Q imply ts ⊥ P∘⊥Q
        StackSet circ = op_circ(a, p, q);
        Mask tm = np.bits;
        while (tm) {
          int t = __builtin_ctzll(tm);
          tm &= tm - 1;
          Mask sm = nq.bits;
          while (sm) {
            int s = __builtin_ctzll(sm);
            sm &= sm - 1;
            ++st.cases;
            if (!a.orth_set(a.app_at(t, s), circ))
              Report::fail(st, wit_ts(a, {{"t", t}, {"s", s}}, {}) + " " + wit2(p, q));
          }
        }
      }
      {  // K ⊥ P⇒(Q⇒P)
        ++korth.cases;
        if (!a.orth_set(a.comb_k, imp(p, imp(q, p)))) Report::fail(korth, wit2(p, q));
      }
      {  // insensitivity: t ⊥ P⇒Q iff t ⊥ P⇒⊥Q
        for (int t = 0; t < nt; ++t) {
          ++insens.cases;
          if (a.orth_set(t, pq_raw) != a.orth_set(t, pq_closed))
            Report::fail(insens, wit_ts(a, {{"t", t}}, {}) + " " + wit2(p, q));
        }
      }
      {  // ∘⊥ below ⋄
        ++cdia.cases;
        if (!sub(op_circ(a, p, q), dia)) Report::fail(cdia, wit2(p, q));
      }
      {  // Sη (2): every π in P⋄Q has E(^⊥P) ⊆ ^⊥(^⊥Q·π)
        Mask pm = dia.bits;
        while (pm) {
          int pi = __builtin_ctzll(pm);
          pm &= pm - 1;
          ++s2c.cases;
          TermSet bound =
              perp_of_stacks(a.rl, push_set(a.pushed(), nq, {Mask{1} << pi}));
          if ((e_np.bits & ~bound.bits) != 0)
            Report::fail(s2c, wit2(p, q) + " pi=" + a.rl.stacks[pi]);
        }
      }
      {  // Sη (3): E(^⊥P) ⊆ ^⊥(^⊥Q·(P⋄Q))
        ++s3c.cases;
        TermSet bound = perp_of_stacks(a.rl, push_set(a.pushed(), nq, dia));
        if ((e_np.bits & ~bound.bits) != 0) Report::fail(s3c, wit2(p, q));
      }
      {  // Sη (5): E(^⊥(P⇒⊥Q)) ⊆ ^⊥(P⇒⊥Q), the two perp expressions agreeing
        ++s5c.cases;
        TermSet n_raw = perp_of_stacks(a.rl, pq_raw);
        TermSet n_closed = perp_of_stacks(a.rl, pq_closed);
        TermSet e_img = app_set(a, {Mask{1} << dc.e}, n_closed);
        if (n_raw.bits != n_closed.bits || (e_img.bits & ~n_closed.bits) != 0)
          Report::fail(s5c, wit2(p, q));
      }
      {  // Sη (7): P⋄Q ⊆ (E(^⊥P))^⊥ ∘⊥ Q
        ++s7c.cases;
        if (!sub(dia, op_circ(a, e_np_perp, q))) Report::fail(s7c, wit2(p, q));
      }

      for (StackSet r : sets) {
        {  // S ⊥ (P⇒Q⇒R)⇒(P⇒Q)⇒(P⇒R)
          ++sorth.cases;
          StackSet body = imp(imp(p, imp(q, r)), imp(imp(p, q), imp(p, r)));
          if (!a.orth_set(a.comb_s, body)) Report::fail(sorth, wit3(p, q, r));
        }
        {  // cc ⊥ ((P⇒Q)⇒P)⇒P, both raw and closed forms
          ++ccorth.cases;
          bool raw = a.orth_set(a.comb_cc, imp(imp(pq_raw, p), p));
          bool clo = a.orth_set(a.comb_cc, impc(impc(pq_closed, p), p));
          if (!raw || !clo) Report::fail(ccorth, wit3(p, q, r));
        }
        {  // B ⊥ (Q⇒R)⇒(P⇒Q)⇒(P⇒R)
          ++bimp.cases;
          if (!a.orth_set(dc.b, imp(imp(q, r), imp(imp(p, q), imp(p, r)))))
            Report::fail(bimp, wit3(p, q, r));
        }
        {  // nested arrows: t ⊥ (P⇒⊥Q)⇒⊥R iff t ⊥ (P⇒Q)⇒R, plus the
          // one-directional variant for right-nested arrows
          for (int t = 0; t < nt; ++t) {
            ++nested.cases;
            bool lc = a.orth_set(t, impc(pq_closed, r));
            bool lr = a.orth_set(t, imp(pq_raw, r));
            bool rc2 = a.orth_set(t, impc(p, impc(q, r)));
            bool rr = a.orth_set(t, imp(p, imp(q, r)));
            if (lc != lr || (rc2 && !rr))
              Report::fail(nested, wit_ts(a, {{"t", t}}, {}) + " " + wit3(p, q, r));
          }
        }
        {  // Sη (4): closed R ⊆ P⋄Q gives E(^⊥P) ⊆ ^⊥(^⊥Q·R)
          ++s4c.cases;
          if (sub(r, dia)) {
            TermSet bound = perp_of_stacks(a.rl, push_set(a.pushed(), nq, r));
            if ((e_np.bits & ~bound.bits) != 0) Report::fail(s4c, wit3(p, q, r));
          }
        }
        {  // half adjunction: Q⇒⊥R ⊆ P implies R ⊆ P∘⊥Q
          ++half.cases;
          if (sub(impc(q, r), p) && !sub(r, op_circ(a, p, q)))
            Report::fail(half, wit3(p, q, r));
        }
        {  // converse: R ⊆ P∘⊥Q implies Q⇒⊥R ⊆ (E(^⊥P))^⊥ ⊆ (EE)^⊥∘⊥P
          ++conv.cases;
          if (sub(r, op_circ(a, p, q))) {
            StackSet eeperp{a.rl.pole_rows[dc.ee]};
            if (!sub(impc(q, r), e_np_perp) ||
                !sub(e_np_perp, op_circ(a, eeperp, p)))
              Report::fail(conv, wit3(p, q, r));
          }
        }
      }
    }
  }

  {  // half adjunction, particular case: P ⊆ (Q⇒⊥P)∘⊥Q
    auto& part = rep.add("half-adjunction-particular");
    for (StackSet p : sets)
      for (StackSet q : sets) {
        ++part.cases;
        if (!sub(p, op_circ(a, impc(q, p), q))) Report::fail(part, wit2(p, q));
      }
  }

  {  // pointwise rules quantified over raw terms/stacks
    auto& istep = rep.add("i-step");
    auto& bstep = rep.add("b-step");
    auto& estep = rep.add("e-seta");
    for (int t = 0; t < nt; ++t)
      for (int p = 0; p < ns; ++p) {
        ++istep.cases;
        if (a.orth(t, p) && !a.orth(dc.i, a.push_at(t, p)))
          Report::fail(istep, wit_ts(a, {{"t", t}}, {{"pi", p}}));
      }
    for (int t = 0; t < nt; ++t)
      for (int u = 0; u < nt; ++u) {
        for (int p = 0; p < ns; ++p) {
          ++estep.cases;
          if (a.orth(a.app_at(t, u), p) &&
              !a.orth(a.app_at(dc.e, t), a.push_at(u, p)))
            Report::fail(estep, wit_ts(a, {{"t", t}, {"u", u}}, {{"pi", p}}));
        }
        for (int v = 0; v < nt; ++v)
          for (int p = 0; p < ns; ++p) {
            ++bstep.cases;
            if (a.orth(t, a.push_at(a.app_at(u, v), p)) &&
                !a.orth(dc.b, a.push_at(t, a.push_at(u, a.push_at(v, p)))))
              Report::fail(bstep, wit_ts(a, {{"t", t}, {"u", u}, {"v", v}}, {{"pi", p}}));
          }
      }
  }

  return rep;
}

Aks single_point_aks() {
  Aks a;
  a.rl = make_lattice({"t"}, {"p"}, {{0, 0}});
  a.push = {0};
  a.app = {0};
  a.store = {0};
  a.qp = 1;
  a.comb_k = a.comb_s = a.comb_cc = 0;
  return a;
}

}  // namespace kocheck
