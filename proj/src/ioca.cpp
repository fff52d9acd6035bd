#include "kocheck/ioca.hpp"

namespace kocheck {

std::optional<int> inf_of(const std::vector<Mask>& leq_rows, Mask subset) {
  const int n = static_cast<int>(leq_rows.size());
  Mask lower = 0;
  for (int x = 0; x < n; ++x)
    if ((leq_rows[x] & subset) == subset) lower |= Mask{1} << x;
  Mask lm = lower;
  while (lm) {
    int cand = __builtin_ctzll(lm);
    lm &= lm - 1;
    // greatest lower bound: every lower bound sits below cand
    bool greatest = true;
    Mask xm = lower;
    while (xm && greatest) {
      int x = __builtin_ctzll(xm);
      xm &= xm - 1;
      greatest = has_bit(leq_rows[x], cand);
    }
    if (greatest) return cand;
  }
  return std::nullopt;
}

std::optional<int> sup_of(const std::vector<Mask>& leq_rows, Mask subset) {
  const int n = static_cast<int>(leq_rows.size());
  Mask upper = 0;
  for (int x = 0; x < n; ++x) {
    bool ub = true;
    Mask sm = subset;
    while (sm && ub) {
      int y = __builtin_ctzll(sm);
      sm &= sm - 1;
      ub = has_bit(leq_rows[y], x);
    }
    if (ub) upper |= Mask{1} << x;
  }
  Mask um = upper;
  while (um) {
    int cand = __builtin_ctzll(um);
    um &= um - 1;
    if ((leq_rows[cand] & upper) == upper) return cand;
  }
  return std::nullopt;
}

int bottom_of(const Ioca& x) {
  auto b = inf_of(x.leq_rows, full_mask(x.n()));
  if (!b) throw ContractError("carrier has no least element");
  return *b;
}

namespace {

// Finite inf-completeness: all subsets when small enough to scan outright,
// otherwise pairwise meets plus a greatest element (equivalent for finite
// posets).
void check_complete(const std::vector<Mask>& leq_rows, Report& rep,
                    const std::vector<std::string>& names) {
  auto& comp = rep.add("inf-complete");
  const int n = static_cast<int>(leq_rows.size());
  if (n <= 16) {
    for (Mask sub = 0;; ++sub) {
      ++comp.cases;
      if (!inf_of(leq_rows, sub)) {
        std::string w = "subset {";
        for (int i = 0; i < n; ++i)
          if (has_bit(sub, i)) w += names[i] + ",";
        Report::fail(comp, w + "} has no infimum");
      }
      if (sub == full_mask(n)) break;
    }
  } else {
    if (!inf_of(leq_rows, 0)) Report::fail(comp, "no greatest element");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        ++comp.cases;
        if (!inf_of(leq_rows, (Mask{1} << a) | (Mask{1} << b)))
          Report::fail(comp, "pair {" + names[a] + "," + names[b] + "} has no meet");
      }
  }
}

}  // namespace

Report check_ioca(const Ioca& x) {
  Report rep = check_oca(x);
  rep.suite = "ioca-axioms";
  const int n = x.n();
  auto wit = [&](std::initializer_list<std::pair<const char*, int>> vs) {
    std::string out;
    for (auto& [k, v] : vs) {
      if (!out.empty()) out += " ";
      out += std::string(k) + "=" + x.name(v);
    }
    return out;
  };

  check_complete(x.leq_rows, rep, x.carrier);

  auto& anti = rep.add("imp-antitone-monotone");
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2) {
      if (!x.leq(a, a2)) continue;
      for (int b = 0; b < n; ++b) {
        ++anti.cases;
        if (!x.leq(x.impl(a2, b), x.impl(a, b)))
          Report::fail(anti, "first arg: " + wit({{"a", a}, {"a'", a2}, {"b", b}}));
        if (!x.leq(x.impl(b, a), x.impl(b, a2)))
          Report::fail(anti, "second arg: " + wit({{"a", a}, {"a'", a2}, {"b", b}}));
      }
    }

  auto& pa = rep.add("half-adjunction-pa");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        ++pa.cases;
        if (x.leq(a, x.impl(b, c)) && !x.leq(x.apply(a, b), c))
          Report::fail(pa, wit({{"a", a}, {"b", b}, {"c", c}}));
      }

  auto& adj = rep.add("adjunctor-e");
  if (!x.in_phi(x.e)) Report::fail(adj, "e outside phi");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        ++adj.cases;
        if (x.leq(x.apply(a, b), c) && !x.leq(x.apply(x.e, a), x.impl(b, c)))
          Report::fail(adj, wit({{"a", a}, {"b", b}, {"c", c}}));
      }

  return rep;
}

Report check_koca(const Koca& x) {
  Report rep = check_ioca(x);
  rep.suite = "koca-axioms";
  const int n = x.n();
  auto& pc = rep.add("peirce-c");
  if (!x.in_phi(x.c)) Report::fail(pc, "c outside phi");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ++pc.cases;
      if (!x.leq(x.c, x.impl(x.impl(x.impl(a, b), a), a)))
        Report::fail(pc, "a=" + x.name(a) + " b=" + x.name(b));
    }
  return rep;
}

Koca from_proper_quadruple(const ProperQuadruple& q) {
  const int n = q.n();
  if (n == 0) throw StructuralError("empty carrier");
  if (n > kMaxUniverse) throw ResourceError("carrier exceeds 64");

  auto inf = [&](Mask sub, const char* clause) {
    auto v = inf_of(q.leq_rows, sub);
    if (!v) throw PropernessError(clause, std::string("no infimum while deriving ") + clause);
    return *v;
  };

  Koca out;
  out.carrier = q.carrier;
  out.leq_rows = q.leq_rows;
  out.imp_table = q.imp_table;
  out.phi = q.phi;
  out.app_table.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Mask candidates = 0;
      for (int c = 0; c < n; ++c)
        if (q.leq(a, q.impl(b, c))) candidates |= Mask{1} << c;
      out.app_table[a * n + b] =
          static_cast<std::uint16_t>(inf(candidates, "application"));
    }

  Mask k_set = 0, s_set = 0, e_set = 0, c_set = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      k_set |= Mask{1} << q.impl(a, q.impl(b, a));
      e_set |= Mask{1} << q.impl(a, q.impl(b, out.app_table[a * n + b]));
      c_set |= Mask{1} << q.impl(q.impl(q.impl(a, b), a), a);
      for (int c = 0; c < n; ++c) {
        int acbc = out.app_table[out.app_table[a * n + c] * n + out.app_table[b * n + c]];
        s_set |= Mask{1} << q.impl(a, q.impl(b, q.impl(c, acbc)));
      }
    }
  out.k = inf(k_set, "k");
  out.s = inf(s_set, "s");
  out.e = inf(e_set, "e");
  out.c = inf(c_set, "c");

  for (auto [elem, clause] : {std::pair{out.k, "k in phi"}, {out.s, "s in phi"},
                              {out.e, "e in phi"}, {out.c, "c in phi"}})
    if (!has_bit(q.phi, elem))
      throw PropernessError(clause, std::string(clause) + " fails: " +
                                        q.carrier[elem] + " outside the filter");
  for (int a = 0; a < n; ++a) {
    if (!has_bit(q.phi, a)) continue;
    for (int b = 0; b < n; ++b)
      if (has_bit(q.phi, b) && !has_bit(q.phi, out.app_table[a * n + b]))
        throw PropernessError("phi app-closed",
                              "phi not closed under application at " + q.carrier[a] +
                                  " " + q.carrier[b]);
  }
  return out;
}

Report heyting_check(const Ioca& x) {
  Report rep;
  rep.suite = "heyting-preorder";
  const int n = x.n();
  BasicCombinators bc = derived_basic_combinators(x);
  auto wit = [&](std::initializer_list<std::pair<const char*, int>> vs) {
    std::string out;
    for (auto& [k, v] : vs) {
      if (!out.empty()) out += " ";
      out += std::string(k) + "=" + x.name(v);
    }
    return out;
  };
  auto phi_realizer_app = [&](int a, int b) -> std::optional<int> {
    for (int f = 0; f < n; ++f)
      if (x.in_phi(f) && x.leq(x.apply(f, a), b)) return f;
    return std::nullopt;
  };
  auto phi_below_imp = [&](int a, int b) -> std::optional<int> {
    for (int f = 0; f < n; ++f)
      if (x.in_phi(f) && x.leq(f, x.impl(a, b))) return f;
    return std::nullopt;
  };

  auto& eq1 = rep.add("entails-iff-below-imp");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ++eq1.cases;
      auto fa = phi_realizer_app(a, b);
      auto fi = phi_below_imp(a, b);
      if (fa.has_value() != fi.has_value())
        Report::fail(eq1, wit({{"a", a}, {"b", b}}));
      // e·g ≤ a→b for the found g, and f a ≤ b for the found f
      if (fa && !x.leq(x.apply(x.e, *fa), x.impl(a, b)))
        Report::fail(eq1, "e-wrap: " + wit({{"a", a}, {"b", b}, {"g", *fa}}));
      if (fi && !x.leq(x.apply(*fi, a), b))
        Report::fail(eq1, "pa: " + wit({{"a", a}, {"b", b}, {"f", *fi}}));
    }

  auto& eq2 = rep.add("meet-imp-equivalence");
  std::vector<int> df_cache(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int meet_ab = x.apply(x.apply(bc.pair, a), b);
      for (int c = 0; c < n; ++c) {
        ++eq2.cases;
        auto lhs = phi_realizer_app(meet_ab, c);   // a∧b ⊑ c
        auto rhs = phi_realizer_app(a, x.impl(b, c));  // a ⊑ b→c
        if (lhs.has_value() != rhs.has_value())
          Report::fail(eq2, wit({{"a", a}, {"b", b}, {"c", c}}));
        if (rhs) {
          // forward realizer: d(f) takes a∧b below c
          if (df_cache[*rhs] < 0) df_cache[*rhs] = comb_d(x, *rhs);
          int df = df_cache[*rhs];
          if (!x.in_phi(df) || !x.leq(x.apply(df, meet_ab), c))
            Report::fail(eq2, "d(f): " + wit({{"a", a}, {"b", b}, {"c", c}, {"f", *rhs}}));
        }
        if (lhs) {
          // converse realizer: b e (b (b f) pair) takes a below b→c
          int bbf_pair = x.apply(x.apply(bc.b, x.apply(bc.b, *lhs)), bc.pair);
          int conv = x.apply(x.apply(bc.b, x.e), bbf_pair);
          if (!x.in_phi(conv) || !x.leq(x.apply(conv, a), x.impl(b, c)))
            Report::fail(eq2, "b-e-chain: " + wit({{"a", a}, {"b", b}, {"c", c}, {"f", *lhs}}));
        }
      }
    }

  return rep;
}

Report double_negation_realizer(const Koca& x, std::optional<int> bot) {
  Report rep;
  rep.suite = "double-negation";
  const int bt = bot.value_or(bottom_of(x));
  auto& dn = rep.add("c-realizes-dne");
  for (int a = 0; a < x.n(); ++a) {
    ++dn.cases;
    int nna = x.impl(x.impl(a, bt), bt);
    if (!x.leq(x.apply(x.c, nna), a))
      Report::fail(dn, "a=" + x.name(a) + " bot=" + x.name(bt));
  }
  return rep;
}

ProperQuadruple boolean_quadruple(int atoms) {
  if (atoms < 0 || atoms > 6) throw StructuralError("boolean:n needs 0 <= n <= 6");
  const int n = 1 << atoms;
  ProperQuadruple q;
  for (int i = 0; i < n; ++i) {
    std::string name;
    for (int b = atoms - 1; b >= 0; --b) name += (i >> b) & 1 ? '1' : '0';
    q.carrier.push_back(atoms == 0 ? "1" : name);
  }
  q.leq_rows.assign(n, 0);
  q.imp_table.assign(n * n, 0);
  const int top = n - 1;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if ((a & b) == a) q.leq_rows[a] |= Mask{1} << b;
      q.imp_table[a * n + b] = (~a & top) | b;
    }
  q.phi = Mask{1} << top;
  return q;
}

Koca boolean_koca(int atoms) { return from_proper_quadruple(boolean_quadruple(atoms)); }

ProperQuadruple chain_quadruple(int n) {
  if (n < 1 || n > kMaxUniverse) throw StructuralError("chain length out of range");
  ProperQuadruple q;
  for (int i = 0; i < n; ++i) q.carrier.push_back("c" + std::to_string(i));
  q.leq_rows.assign(n, 0);
  q.imp_table.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a <= b) q.leq_rows[a] |= Mask{1} << b;
      q.imp_table[a * n + b] = a <= b ? n - 1 : b;
    }
  q.phi = Mask{1} << (n - 1);
  return q;
}

FilteredOca chain_meet_oca(int n) {
  FilteredOca o;
  for (int i = 0; i < n; ++i) o.carrier.push_back("c" + std::to_string(i));
  o.leq_rows.assign(n, 0);
  o.app_table.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a <= b) o.leq_rows[a] |= Mask{1} << b;
      o.app_table[a * n + b] = std::min(a, b);
    }
  o.k = o.s = n - 1;
  o.phi = Mask{1} << (n - 1);
  return o;
}

Koca trivial_koca() { return boolean_koca(0); }

}  // namespace kocheck
