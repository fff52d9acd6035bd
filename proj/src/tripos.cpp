#include "kocheck/tripos.hpp"

namespace kocheck {

FiniteFunction identity_fun(int n) {
  FiniteFunction f;
  f.source = f.target = n;
  f.graph.resize(n);
  for (int i = 0; i < n; ++i) f.graph[i] = static_cast<std::uint16_t>(i);
  return f;
}

FiniteFunction compose(const FiniteFunction& f, const FiniteFunction& g) {
  if (g.target != f.source) throw StructuralError("composition type mismatch");
  FiniteFunction h;
  h.source = g.source;
  h.target = f.target;
  h.graph.resize(g.source);
  for (int i = 0; i < g.source; ++i) h.graph[i] = f.graph[g.graph[i]];
  return h;
}

PullbackSquare canonical_pullback(const FiniteFunction& f, const FiniteFunction& g) {
  if (f.target != g.target) throw StructuralError("pullback legs must share a target");
  PullbackSquare sq;
  sq.f = f;
  sq.g = g;
  sq.p.target = f.source;
  sq.q.target = g.source;
  for (int j = 0; j < f.source; ++j)
    for (int k = 0; k < g.source; ++k)
      if (f.at(j) == g.at(k)) {
        sq.p.graph.push_back(static_cast<std::uint16_t>(j));
        sq.q.graph.push_back(static_cast<std::uint16_t>(k));
      }
  sq.p.source = sq.q.source = static_cast<int>(sq.p.graph.size());
  return sq;
}

bool validate_pullback(const PullbackSquare& sq) {
  if (sq.p.source != sq.q.source) return false;
  if (sq.f.target != sq.g.target) return false;
  if (sq.p.target != sq.f.source || sq.q.target != sq.g.source) return false;
  for (int j = 0; j < sq.f.source; ++j)
    for (int k = 0; k < sq.g.source; ++k) {
      int matches = 0;
      for (int x = 0; x < sq.p.source; ++x)
        if (sq.p.at(x) == j && sq.q.at(x) == k) ++matches;
      if ((sq.f.at(j) == sq.g.at(k)) != (matches == 1)) return false;
      if (sq.f.at(j) != sq.g.at(k) && matches != 0) return false;
    }
  // commutativity f∘p = g∘q
  for (int x = 0; x < sq.p.source; ++x)
    if (sq.f.at(sq.p.at(x)) != sq.g.at(sq.q.at(x))) return false;
  return true;
}

std::optional<int> entails_pred(const FilteredOca& o, const Predicate& phi,
                                const Predicate& psi, bool include_derived) {
  if (phi.size() != psi.size()) throw StructuralError("predicate index mismatch");
  for (int r : realizer_pool(o, include_derived)) {
    bool ok = true;
    for (int i = 0; i < phi.size() && ok; ++i)
      ok = o.leq(o.apply(r, phi.at(i)), psi.at(i));
    if (ok) return r;
  }
  return std::nullopt;
}

Predicate reindex(const FiniteFunction& f, const Predicate& phi) {
  if (phi.size() != f.target) throw StructuralError("reindex target mismatch");
  Predicate out;
  out.values.resize(f.source);
  for (int j = 0; j < f.source; ++j) out.values[j] = phi.values[f.at(j)];
  return out;
}

Predicate meet_pred(const FilteredOca& o, const Predicate& phi, const Predicate& psi) {
  BasicCombinators bc = derived_basic_combinators(o);
  Predicate out;
  out.values.resize(phi.size());
  for (int i = 0; i < phi.size(); ++i)
    out.values[i] = static_cast<std::uint16_t>(
        o.apply(o.apply(bc.pair, phi.at(i)), psi.at(i)));
  return out;
}

Predicate top_pred(const FilteredOca& o, int index_size) {
  Predicate out;
  out.values.assign(index_size, static_cast<std::uint16_t>(o.k));
  return out;
}

Predicate imp_pred(const Ioca& x, const Predicate& phi, const Predicate& psi) {
  Predicate out;
  out.values.resize(phi.size());
  for (int i = 0; i < phi.size(); ++i)
    out.values[i] = static_cast<std::uint16_t>(x.impl(phi.at(i), psi.at(i)));
  return out;
}

Predicate forall_along(const Ioca& x, const FiniteFunction& f, const Predicate& psi) {
  if (psi.size() != f.source) throw StructuralError("forall source mismatch");
  Predicate out;
  out.values.resize(f.target);
  for (int i = 0; i < f.target; ++i) {
    Mask fiber = 0;
    for (int j = 0; j < f.source; ++j)
      if (f.at(j) == i) fiber |= Mask{1} << psi.at(j);
    auto inf = inf_of(x.leq_rows, fiber);
    if (!inf) throw ContractError("fiber infimum missing");
    out.values[i] = static_cast<std::uint16_t>(*inf);
  }
  return out;
}

std::vector<Predicate> all_predicates(const FilteredOca& o, int index_size) {
  std::vector<Predicate> out;
  Predicate cur;
  cur.values.assign(index_size, 0);
  for (;;) {
    out.push_back(cur);
    int i = 0;
    for (; i < index_size; ++i) {
      if (++cur.values[i] < o.n()) break;
      cur.values[i] = 0;
    }
    if (i == index_size) break;
  }
  return out;
}

namespace {

std::string show_pred(const FilteredOca& o, const Predicate& p) {
  std::string out = "(";
  for (int i = 0; i < p.size(); ++i) out += o.name(p.at(i)) + (i + 1 < p.size() ? "," : "");
  return out + ")";
}

}  // namespace

Report preorder_check(const FilteredOca& o, int index_size) {
  Report rep;
  rep.suite = "tripos-preorder";
  BasicCombinators bc = derived_basic_combinators(o);
  auto preds = all_predicates(o, index_size);

  auto& refl = rep.add("reflexivity-via-i");
  for (const auto& phi : preds) {
    ++refl.cases;
    bool ok = true;
    for (int i = 0; i < phi.size() && ok; ++i)
      ok = o.leq(o.apply(bc.i, phi.at(i)), phi.at(i));
    if (!ok) Report::fail(refl, show_pred(o, phi));
  }

  auto& trans = rep.add("transitivity-via-b");
  for (const auto& phi : preds)
    for (const auto& psi : preds) {
      auto r1 = entails_pred(o, phi, psi);
      if (!r1) continue;
      for (const auto& theta : preds) {
        auto r2 = entails_pred(o, psi, theta);
        if (!r2) continue;
        ++trans.cases;
        int comp = o.apply(o.apply(bc.b, *r2), *r1);
        bool ok = true;
        for (int i = 0; i < phi.size() && ok; ++i)
          ok = o.leq(o.apply(comp, phi.at(i)), theta.at(i));
        if (!ok)
          Report::fail(trans, show_pred(o, phi) + "->" + show_pred(o, psi) + "->" +
                                  show_pred(o, theta));
      }
    }
  return rep;
}

Report reindex_check(const FilteredOca& o, int index_size) {
  Report rep;
  rep.suite = "tripos-reindex";
  auto preds = all_predicates(o, index_size);

  auto& fid = rep.add("identity-functorial");
  FiniteFunction id = identity_fun(index_size);
  for (const auto& phi : preds) {
    ++fid.cases;
    if (!(reindex(id, phi) == phi)) Report::fail(fid, show_pred(o, phi));
  }

  auto& fcomp = rep.add("composition-functorial");
  auto& fmeet = rep.add("preserves-meet-top");
  // all maps g: J→I and f: K→J for small sizes around index_size
  const int I = index_size, J = index_size, K = index_size > 1 ? index_size - 1 : 1;
  std::vector<FiniteFunction> gs, fs;
  {
    FiniteFunction g;
    g.source = J;
    g.target = I;
    g.graph.assign(J, 0);
    for (;;) {
      gs.push_back(g);
      int i = 0;
      for (; i < J; ++i) {
        if (++g.graph[i] < I) break;
        g.graph[i] = 0;
      }
      if (i == J) break;
    }
    FiniteFunction f;
    f.source = K;
    f.target = J;
    f.graph.assign(K, 0);
    for (;;) {
      fs.push_back(f);
      int i = 0;
      for (; i < K; ++i) {
        if (++f.graph[i] < J) break;
        f.graph[i] = 0;
      }
      if (i == K) break;
    }
  }
  for (const auto& g : gs)
    for (const auto& f : fs)
      for (const auto& phi : preds) {
        ++fcomp.cases;
        Predicate lhs = reindex(f, reindex(g, phi));
        Predicate rhs = reindex(compose(g, f), phi);
        if (!(lhs == rhs)) Report::fail(fcomp, show_pred(o, phi));
      }
  for (const auto& g : gs)
    for (const auto& phi : preds)
      for (const auto& psi : preds) {
        ++fmeet.cases;
        Predicate lhs = reindex(g, meet_pred(o, phi, psi));
        Predicate rhs = meet_pred(o, reindex(g, phi), reindex(g, psi));
        if (!(lhs == rhs)) Report::fail(fmeet, show_pred(o, phi) + show_pred(o, psi));
        if (!(reindex(g, top_pred(o, I)) == top_pred(o, J)))
          Report::fail(fmeet, "top along a map");
      }
  return rep;
}

Report heyting_pred_check(const Ioca& x, int index_size) {
  Report rep;
  rep.suite = "tripos-heyting";
  BasicCombinators bc = derived_basic_combinators(x);
  auto preds = all_predicates(x, index_size);
  auto uniform_phi = [&](const Predicate& a, const Predicate& b) -> std::optional<int> {
    for (int r = 0; r < x.n(); ++r) {
      if (!x.in_phi(r)) continue;
      bool ok = true;
      for (int i = 0; i < a.size() && ok; ++i) ok = x.leq(x.apply(r, a.at(i)), b.at(i));
      if (ok) return r;
    }
    return std::nullopt;
  };

  auto& law = rep.add("meet-imp-law");
  std::vector<int> df_cache(x.n(), -1);
  for (const auto& phi : preds)
    for (const auto& psi : preds)
      for (const auto& theta : preds) {
        ++law.cases;
        Predicate meet = meet_pred(x, phi, psi);
        Predicate imp = imp_pred(x, psi, theta);
        auto lhs = uniform_phi(meet, theta);
        auto rhs = uniform_phi(phi, imp);
        if (lhs.has_value() != rhs.has_value())
          Report::fail(law, show_pred(x, phi) + show_pred(x, psi) + show_pred(x, theta));
        if (rhs) {  // d(f) realizes φ∧ψ ⊢ θ
          if (df_cache[*rhs] < 0) df_cache[*rhs] = comb_d(x, *rhs);
          int df = df_cache[*rhs];
          for (int i = 0; i < phi.size(); ++i)
            if (!x.leq(x.apply(df, meet.at(i)), theta.at(i)))
              Report::fail(law, "d(f) at " + show_pred(x, phi));
        }
        if (lhs) {  // b e (b (b f) pair) realizes φ ⊢ ψ→θ
          int conv = x.apply(x.apply(bc.b, x.e),
                             x.apply(x.apply(bc.b, x.apply(bc.b, *lhs)), bc.pair));
          for (int i = 0; i < phi.size(); ++i)
            if (!x.leq(x.apply(conv, phi.at(i)), imp.at(i)))
              Report::fail(law, "b-e-chain at " + show_pred(x, phi));
        }
      }
  return rep;
}

Report forall_adjunction_check(const Ioca& x, const FiniteFunction& f) {
  Report rep;
  rep.suite = "tripos-forall";
  auto& adj = rep.add("same-realizer-transfer");
  auto preds_i = all_predicates(x, f.target);
  auto preds_j = all_predicates(x, f.source);
  auto pool = realizer_pool(x, true);
  for (const auto& phi : preds_i)
    for (const auto& psi : preds_j) {
      Predicate fphi = reindex(f, phi);
      Predicate all = forall_along(x, f, psi);
      for (int r : pool) {
        ++adj.cases;
        bool left = true;
        for (int j = 0; j < f.source && left; ++j)
          left = x.leq(x.apply(r, fphi.at(j)), psi.at(j));
        bool right = true;
        for (int i = 0; i < f.target && right; ++i)
          right = x.leq(x.apply(r, phi.at(i)), all.at(i));
        if (left != right)
          Report::fail(adj, "r=" + x.name(r) + " " + show_pred(x, phi) + " " +
                                show_pred(x, psi));
      }
    }
  return rep;
}

Report beck_chevalley_check(const Ioca& x, const PullbackSquare& sq) {
  Report rep;
  rep.suite = "tripos-beck-chevalley";
  auto& val = rep.add("square-valid");
  val.cases = 1;
  if (!validate_pullback(sq)) {
    Report::fail(val, "unique-existence fails");
    return rep;
  }
  auto& bc = rep.add("pointwise-equality");
  for (const auto& phi : all_predicates(x, sq.f.source)) {
    ++bc.cases;
    Predicate lhs = reindex(sq.g, forall_along(x, sq.f, phi));
    Predicate rhs = forall_along(x, sq.q, reindex(sq.p, phi));
    if (!(lhs == rhs)) Report::fail(bc, show_pred(x, phi));
  }
  return rep;
}

Report generic_predicate_check(const FilteredOca& o, int max_index_size) {
  Report rep;
  rep.suite = "tripos-generic";
  auto& gen = rep.add("reindex-of-identity");
  Predicate tr;  // identity predicate on the carrier itself
  tr.values.resize(o.n());
  for (int i = 0; i < o.n(); ++i) tr.values[i] = static_cast<std::uint16_t>(i);
  for (int size = 0; size <= max_index_size; ++size)
    for (const auto& phi : all_predicates(o, size)) {
      ++gen.cases;
      FiniteFunction chi;
      chi.source = size;
      chi.target = o.n();
      chi.graph = phi.values;
      if (!(reindex(chi, tr) == phi)) Report::fail(gen, show_pred(o, phi));
    }
  return rep;
}

Report classical_check(const Koca& a, int index_size) {
  Report rep;
  rep.suite = "tripos-classical";
  const int bot = bottom_of(a);
  auto& cls = rep.add("c-realizes-dne");
  for (const auto& phi : all_predicates(a, index_size)) {
    ++cls.cases;
    bool ok = true;
    for (int i = 0; i < phi.size() && ok; ++i) {
      int nn = a.impl(a.impl(phi.at(i), bot), bot);
      ok = a.leq(a.apply(a.c, nn), phi.at(i));
    }
    if (!ok) Report::fail(cls, show_pred(a, phi));
  }
  return rep;
}

}  // namespace kocheck
