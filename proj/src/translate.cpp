#include "kocheck/translate.hpp"

#include <algorithm>
#include <map>

namespace kocheck {

Koca aks_to_koca(const Aks& a, const Caps& caps) {
  std::vector<StackSet> closed = enumerate_closed_stack_sets(a.rl, caps);
  const int n = static_cast<int>(closed.size());
  if (n > caps.max_closed_sets || n > kMaxUniverse)
    throw ResourceError("derived carrier too large: " + std::to_string(n) +
                        " closed sets");

  std::map<Mask, int> index;
  for (int i = 0; i < n; ++i) index[closed[i].bits] = i;
  auto idx = [&](StackSet s) {
    auto it = index.find(s.bits);
    if (it == index.end())
      throw StructuralError("operation left the closed sets: " + a.rl.show_stacks(s));
    return it->second;
  };

  Koca out;
  out.carrier.reserve(n);
  for (auto s : closed) out.carrier.push_back(a.rl.show_stacks(s));
  out.leq_rows.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((closed[i].bits & closed[j].bits) == closed[j].bits)  // i ⊇ j
        out.leq_rows[i] |= Mask{1} << j;
  out.app_table.assign(n * n, 0);
  out.imp_table.assign(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.app_table[i * n + j] = static_cast<std::uint16_t>(idx(op_circ(a, closed[i], closed[j])));
      out.imp_table[i * n + j] = static_cast<std::uint16_t>(idx(op_imp(a, closed[i], closed[j])));
    }

  DerivedCombinators dc = derived_combinators(a);
  out.k = idx({a.rl.pole_rows[a.comb_k]});
  out.s = idx({a.rl.pole_rows[a.comb_s]});
  out.c = idx({a.rl.pole_rows[a.comb_cc]});
  out.e = idx({a.rl.pole_rows[dc.ee]});

  out.phi = 0;
  for (int i = 0; i < n; ++i) {
    Mask qp = a.qp;
    while (qp) {
      int t = __builtin_ctzll(qp);
      qp &= qp - 1;
      if (a.orth_set(t, closed[i])) {
        out.phi |= Mask{1} << i;
        break;
      }
    }
  }
  return out;
}

Aks koca_to_aks(const Koca& a) {
  const int n = a.n();
  Aks out;
  std::vector<std::pair<int, int>> pole;
  for (int t = 0; t < n; ++t)
    for (int p = 0; p < n; ++p)
      if (a.leq(t, p)) pole.push_back({t, p});
  out.rl = make_lattice(a.carrier, a.carrier, pole);

  const int bot = bottom_of(a);
  out.push.assign(n * n, 0);
  out.app.assign(n * n, 0);
  out.store.assign(n, 0);
  for (int t = 0; t < n; ++t)
    for (int p = 0; p < n; ++p) {
      out.push[t * n + p] = static_cast<std::uint8_t>(a.impl(t, p));
      out.app[t * n + p] = static_cast<std::uint8_t>(a.apply(t, p));
    }
  for (int p = 0; p < n; ++p) out.store[p] = static_cast<std::uint8_t>(a.impl(p, bot));

  const int b = a.apply(a.apply(a.s, a.apply(a.k, a.s)), a.k);
  out.comb_k = a.apply(a.e, a.apply(a.apply(b, a.e), a.k));
  const int be_be = a.apply(a.apply(b, a.apply(b, a.e)), a.apply(b, a.e));
  out.comb_s = a.apply(a.e, a.apply(be_be, a.s));
  out.comb_cc = a.apply(a.e, a.c);
  out.qp = a.phi;
  return out;
}

Report galois_check(const Koca& a, const Caps& caps) {
  Report rep;
  rep.suite = "galois";
  const int n = a.n();
  Aks k = koca_to_aks(a);

  // down-set and up-set masks per element
  std::vector<Mask> up = a.leq_rows;  // up[x] = {y : x ≤ y}
  std::vector<Mask> down(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (a.leq(y, x)) down[x] |= Mask{1} << y;

  if (n > 16) throw ResourceError("carrier too large for the subset scan");
  auto& cl1 = rep.add("perp-down-up");
  for (Mask u = 0;; ++u) {
    ++cl1.cases;
    auto iv = inf_of(a.leq_rows, u);
    auto sv = sup_of(a.leq_rows, u);
    if (!iv || !sv) {
      Report::fail(cl1, "no inf/sup for a subset");
    } else {
      if (perp_of_stacks(k.rl, {u}).bits != down[*iv])
        Report::fail(cl1, "left perp of subset " + std::to_string(u));
      if (perp_of_terms(k.rl, {u}).bits != up[*sv])
        Report::fail(cl1, "right perp of subset " + std::to_string(u));
    }
    if (u == full_mask(n)) break;
  }

  auto& cl2 = rep.add("principal-inf-sup");
  for (int x = 0; x < n; ++x) {
    ++cl2.cases;
    auto iv = inf_of(a.leq_rows, up[x]);
    auto sv = sup_of(a.leq_rows, down[x]);
    if (!iv || *iv != x || !sv || *sv != x)
      Report::fail(cl2, "element " + a.name(x));
  }

  auto& cl3 = rep.add("closed-are-principal-filters");
  std::vector<StackSet> closed = enumerate_closed_stack_sets(k.rl, caps);
  {
    std::vector<Mask> expect;
    for (int x = 0; x < n; ++x) expect.push_back(up[x]);
    std::sort(expect.begin(), expect.end());
    std::vector<Mask> got;
    for (auto s : closed) got.push_back(s.bits);
    cl3.cases = closed.size();
    if (got != expect) Report::fail(cl3, "closed sets differ from principal filters");
    for (int x = 0; x < n; ++x) {
      auto iv = inf_of(a.leq_rows, up[x]);  // g(f(x)) = x
      if (!iv || *iv != x) Report::fail(cl3, "g(f(" + a.name(x) + "))");
    }
    for (auto s : closed) {  // f(g(P)) = P
      auto iv = inf_of(a.leq_rows, s.bits);
      if (!iv || up[*iv] != s.bits) Report::fail(cl3, "f(g(P)) for P=" + k.rl.show_stacks(s));
    }
  }

  auto& cl4 = rep.add("inf-of-imp");
  for (auto p : closed)
    for (auto q : closed) {
      ++cl4.cases;
      auto ip = inf_of(a.leq_rows, p.bits);
      auto iq = inf_of(a.leq_rows, q.bits);
      auto raw = inf_of(a.leq_rows, op_imp_raw(k, p, q).bits);
      auto clo = inf_of(a.leq_rows, op_imp(k, p, q).bits);
      int want = a.impl(*ip, *iq);
      if (!raw || !clo || *raw != want || *clo != want)
        Report::fail(cl4, "P=" + k.rl.show_stacks(p) + " Q=" + k.rl.show_stacks(q));
    }

  return rep;
}

namespace {

// Odometer over predicate tuples: values[i] < base, |values| = size.
bool next_tuple(std::vector<int>& t, int base) {
  for (size_t i = 0; i < t.size(); ++i) {
    if (++t[i] < base) return true;
    t[i] = 0;
  }
  return false;
}

double pow_count(int base, int exp) {
  double r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Report streicher_iso_check(const Aks& a, const PairScanOptions& opt) {
  Report rep;
  rep.suite = "streicher-iso";
  std::vector<StackSet> closed = enumerate_closed_stack_sets(a.rl, opt.caps);
  const int nc = static_cast<int>(closed.size());
  if (nc > opt.caps.max_closed_sets)
    throw ResourceError("closed-set predicate scan bound exceeded");
  Koca k = aks_to_koca(a, opt.caps);
  const int I = opt.index_size;

  // per closed-set pair: quasi-proofs orthogonal to P ⇒ Q
  std::vector<Mask> qp_orth(nc * nc, 0);
  for (int p = 0; p < nc; ++p)
    for (int q = 0; q < nc; ++q) {
      StackSet raw = op_imp_raw(a, closed[p], closed[q]);
      Mask m = 0;
      Mask qpm = a.qp;
      while (qpm) {
        int t = __builtin_ctzll(qpm);
        qpm &= qpm - 1;
        if (a.orth_set(t, raw)) m |= Mask{1} << t;
      }
      qp_orth[p * nc + q] = m;
    }

  auto& tri = rep.add("three-way-entailment");
  auto run_pair = [&](const std::vector<int>& phi, const std::vector<int>& psi) {
    ++tri.cases;
    // application form: some P in Φ with P φ(i) ≤ ψ(i) for all i
    bool app_form = false;
    for (int r = 0; r < nc && !app_form; ++r) {
      if (!k.in_phi(r)) continue;
      bool ok = true;
      for (int i = 0; i < I && ok; ++i) ok = k.leq(k.apply(r, phi[i]), psi[i]);
      app_form = ok;
    }
    // implication form: some P in Φ with P ≤ φ(i)→ψ(i) for all i
    bool imp_form = false;
    for (int r = 0; r < nc && !imp_form; ++r) {
      if (!k.in_phi(r)) continue;
      bool ok = true;
      for (int i = 0; i < I && ok; ++i) ok = k.leq(r, k.impl(phi[i], psi[i]));
      imp_form = ok;
    }
    // quasi-proof form: some t in QP with t ⊥ φ(i) ⇒ ψ(i) for all i
    Mask ts = a.qp;
    for (int i = 0; i < I; ++i) ts &= qp_orth[phi[i] * nc + psi[i]];
    bool qp_form = ts != 0;
    if (I == 0) {
      app_form = imp_form = popcount(k.phi) > 0;
      qp_form = popcount(a.qp) > 0;
    }
    if (app_form != imp_form || imp_form != qp_form) {
      std::string w = "phi=(";
      for (int i = 0; i < I; ++i) w += k.name(phi[i]) + (i + 1 < I ? "," : "");
      w += ") psi=(";
      for (int i = 0; i < I; ++i) w += k.name(psi[i]) + (i + 1 < I ? "," : "");
      Report::fail(tri, w + ")");
    }
  };

  double pair_count = pow_count(nc, 2 * I);
  if (pair_count <= opt.caps.pred_pairs_exhaustive) {
    std::vector<int> phi(I, 0);
    do {
      std::vector<int> psi(I, 0);
      do {
        run_pair(phi, psi);
      } while (next_tuple(psi, nc));
    } while (next_tuple(phi, nc));
  } else {
    SplitMix64 rng(opt.seed);
    for (std::uint64_t it = 0; it < opt.samples; ++it) {
      std::vector<int> phi(I), psi(I);
      for (int i = 0; i < I; ++i) {
        phi[i] = static_cast<int>(rng.below(nc));
        psi[i] = static_cast<int>(rng.below(nc));
      }
      run_pair(phi, psi);
    }
  }
  return rep;
}

Report roundtrip_tripos_equivalence(const Koca& a, const PairScanOptions& opt) {
  Report rep;
  rep.suite = "roundtrip-equivalence";
  const int n = a.n();
  Aks k = koca_to_aks(a);
  const int I = opt.index_size;

  // per element pair (x,y): Φ-members t with t ⊥ (↑x ⇒ ↑y) in the AKS
  std::vector<Mask> orth(n * n, 0);
  std::vector<Mask> up = a.leq_rows;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      StackSet imp_set = push_set(k.pushed(), perp_of_stacks(k.rl, {up[x]}), {up[y]});
      Mask m = 0;
      Mask qpm = k.qp;
      while (qpm) {
        int t = __builtin_ctzll(qpm);
        qpm &= qpm - 1;
        if (k.orth_set(t, imp_set)) m |= Mask{1} << t;
      }
      orth[x * n + y] = m;
    }

  auto& eq = rep.add("transport-equivalence");
  auto run_pair = [&](const std::vector<int>& phi, const std::vector<int>& psi) {
    ++eq.cases;
    bool lhs = false;  // ∃r∈Φ ∀i: r φ(i) ≤ ψ(i)
    for (int r = 0; r < n && !lhs; ++r) {
      if (!a.in_phi(r)) continue;
      bool ok = true;
      for (int i = 0; i < I && ok; ++i) ok = a.leq(a.apply(r, phi[i]), psi[i]);
      lhs = ok;
    }
    bool mid = false;  // ∃r∈Φ ∀i: r ≤ φ(i)→ψ(i)
    for (int r = 0; r < n && !mid; ++r) {
      if (!a.in_phi(r)) continue;
      bool ok = true;
      for (int i = 0; i < I && ok; ++i) ok = a.leq(r, a.impl(phi[i], psi[i]));
      mid = ok;
    }
    Mask ts = k.qp;
    for (int i = 0; i < I; ++i) ts &= orth[phi[i] * n + psi[i]];
    bool rhs = ts != 0;
    if (I == 0) {
      lhs = mid = popcount(a.phi) > 0;
      rhs = popcount(k.qp) > 0;
    }
    if (lhs != rhs || lhs != mid) {
      std::string w = "phi=(";
      for (int i = 0; i < I; ++i) w += a.name(phi[i]) + (i + 1 < I ? "," : "");
      w += ") psi=(";
      for (int i = 0; i < I; ++i) w += a.name(psi[i]) + (i + 1 < I ? "," : "");
      Report::fail(eq, w + ")");
    }
  };

  double pair_count = pow_count(n, 2 * I);
  if (pair_count <= opt.caps.pred_pairs_exhaustive) {
    std::vector<int> phi(I, 0);
    do {
      std::vector<int> psi(I, 0);
      do {
        run_pair(phi, psi);
      } while (next_tuple(psi, n));
    } while (next_tuple(phi, n));
  } else {
    SplitMix64 rng(opt.seed);
    for (std::uint64_t it = 0; it < opt.samples; ++it) {
      std::vector<int> phi(I), psi(I);
      for (int i = 0; i < I; ++i) {
        phi[i] = static_cast<int>(rng.below(n));
        psi[i] = static_cast<int>(rng.below(n));
      }
      run_pair(phi, psi);
    }
  }
  return rep;
}

}  // namespace kocheck
