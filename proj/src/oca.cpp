#include "kocheck/oca.hpp"

#include <algorithm>
#include <set>

namespace kocheck {

Term tconst(int elem) {
  auto t = std::make_shared<CombTerm>();
  t->kind = CombTerm::Const;
  t->elem = elem;
  return t;
}

Term tvar(std::string name) {
  auto t = std::make_shared<CombTerm>();
  t->kind = CombTerm::Var;
  t->var = std::move(name);
  return t;
}

Term tapp(Term fn, Term arg) {
  auto t = std::make_shared<CombTerm>();
  t->kind = CombTerm::App;
  t->fn = std::move(fn);
  t->arg = std::move(arg);
  return t;
}

Term tapps(std::initializer_list<Term> chain) {
  Term acc;
  for (const Term& t : chain) acc = acc ? tapp(acc, t) : t;
  return acc;
}

bool term_equal(const Term& a, const Term& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case CombTerm::Const: return a->elem == b->elem;
    case CombTerm::Var: return a->var == b->var;
    case CombTerm::App:
      return term_equal(a->fn, b->fn) && term_equal(a->arg, b->arg);
  }
  return false;
}

std::string show_term(const FilteredOca& o, const Term& t) {
  switch (t->kind) {
    case CombTerm::Const: return o.name(t->elem);
    case CombTerm::Var: return t->var;
    case CombTerm::App: {
      std::string lhs = show_term(o, t->fn);
      std::string rhs = show_term(o, t->arg);
      if (t->arg->kind == CombTerm::App) rhs = "(" + rhs + ")";
      return lhs + " " + rhs;
    }
  }
  return "?";
}

bool contains_var(const Term& t, const std::string& v) {
  switch (t->kind) {
    case CombTerm::Const: return false;
    case CombTerm::Var: return t->var == v;
    case CombTerm::App: return contains_var(t->fn, v) || contains_var(t->arg, v);
  }
  return false;
}

Mask term_constants(const Term& t) {
  switch (t->kind) {
    case CombTerm::Const: return Mask{1} << t->elem;
    case CombTerm::Var: return 0;
    case CombTerm::App: return term_constants(t->fn) | term_constants(t->arg);
  }
  return 0;
}

Term substitute(const Term& t, const std::string& v, const Term& u) {
  switch (t->kind) {
    case CombTerm::Const: return t;
    case CombTerm::Var: return t->var == v ? u : t;
    case CombTerm::App: {
      Term fn = substitute(t->fn, v, u);
      Term arg = substitute(t->arg, v, u);
      if (fn == t->fn && arg == t->arg) return t;
      return tapp(fn, arg);
    }
  }
  return t;
}

Term parse_comb_term(const FilteredOca& o, const std::string& text) {
  size_t pos = 0;
  auto skip = [&] { while (pos < text.size() && isspace((unsigned char)text[pos])) ++pos; };
  auto ident = [&]() -> std::string {
    size_t start = pos;
    while (pos < text.size() && !isspace((unsigned char)text[pos]) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    return text.substr(start, pos - start);
  };

  // atom* with left-associative application
  std::function<Term(void)> expr = [&]() -> Term {
    Term acc;
    for (;;) {
      skip();
      if (pos >= text.size() || text[pos] == ')') break;
      Term atom;
      if (text[pos] == '(') {
        ++pos;
        atom = expr();
        skip();
        if (pos >= text.size() || text[pos] != ')')
          throw StructuralError("unbalanced parenthesis at offset " + std::to_string(pos));
        ++pos;
      } else {
        std::string id = ident();
        if (id.empty()) throw StructuralError("empty token at offset " + std::to_string(pos));
        auto it = std::find(o.carrier.begin(), o.carrier.end(), id);
        atom = it == o.carrier.end()
                   ? tvar(id)
                   : tconst(static_cast<int>(it - o.carrier.begin()));
      }
      acc = acc ? tapp(acc, atom) : atom;
    }
    if (!acc) throw StructuralError("empty term");
    return acc;
  };

  Term t = expr();
  skip();
  if (pos != text.size()) throw StructuralError("trailing input at offset " + std::to_string(pos));
  return t;
}

Term lambda_star(const FilteredOca& o, const std::string& v, const Term& t) {
  switch (t->kind) {
    case CombTerm::Var:
      if (t->var == v) return tapps({tconst(o.s), tconst(o.k), tconst(o.k)});
      [[fallthrough]];
    case CombTerm::Const:
      return tapp(tconst(o.k), t);
    case CombTerm::App:
      return tapps({tconst(o.s), lambda_star(o, v, t->fn), lambda_star(o, v, t->arg)});
  }
  throw StructuralError("malformed term");
}

int eval_term(const FilteredOca& o, const Term& t) {
  switch (t->kind) {
    case CombTerm::Const:
      if (t->elem < 0 || t->elem >= o.n())
        throw StructuralError("constant outside the carrier");
      return t->elem;
    case CombTerm::Var:
      throw StructuralError("free variable '" + t->var + "' in closed evaluation");
    case CombTerm::App:
      return o.apply(eval_term(o, t->fn), eval_term(o, t->arg));
  }
  throw StructuralError("malformed term");
}

int eval_term_env(const FilteredOca& o, const Term& t,
                  const std::vector<std::pair<std::string, int>>& env) {
  switch (t->kind) {
    case CombTerm::Const: return eval_term(o, t);
    case CombTerm::Var:
      for (const auto& [name, val] : env)
        if (name == t->var) return val;
      throw StructuralError("unassigned variable '" + t->var + "'");
    case CombTerm::App:
      return o.apply(eval_term_env(o, t->fn, env), eval_term_env(o, t->arg, env));
  }
  throw StructuralError("malformed term");
}

Mask app_closure(const FilteredOca& o, Mask seed) {
  Mask cur = seed;
  for (;;) {
    Mask next = cur;
    Mask am = cur;
    while (am) {
      int a = __builtin_ctzll(am);
      am &= am - 1;
      Mask bm = cur;
      while (bm) {
        int b = __builtin_ctzll(bm);
        bm &= bm - 1;
        next |= Mask{1} << o.apply(a, b);
      }
    }
    if (next == cur) return cur;
    cur = next;
  }
}

namespace {

// Fold λ* over several variables, innermost last, then evaluate.
int eval_lambda(const FilteredOca& o, std::vector<std::string> vars, Term body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    body = lambda_star(o, *it, body);
  return eval_term(o, body);
}

}  // namespace

BasicCombinators derived_basic_combinators(const FilteredOca& o) {
  auto x = tvar("x"), y = tvar("y"), z = tvar("z");
  BasicCombinators c{};
  c.b = eval_lambda(o, {"x", "y", "z"}, tapp(x, tapp(y, z)));
  c.i = eval_lambda(o, {"x"}, x);
  c.cflip = eval_lambda(o, {"x", "y", "z"}, tapps({x, z, y}));
  c.w = eval_lambda(o, {"x", "y"}, tapps({x, y, y}));
  c.tt = eval_lambda(o, {"x", "y"}, x);
  c.ff = eval_lambda(o, {"x", "y"}, y);
  c.pair = eval_lambda(o, {"x", "y", "z"}, tapps({z, x, y}));
  BasicCombinators tmp = c;
  c.p0 = eval_lambda(o, {"x"}, tapp(x, tconst(tmp.tt)));
  c.p1 = eval_lambda(o, {"x"}, tapp(x, tconst(tmp.ff)));
  return c;
}

int comb_a(const FilteredOca& o, int r, int s) {
  BasicCombinators c = derived_basic_combinators(o);
  auto x = tvar("x");
  return eval_lambda(
      o, {"x"},
      tapps({tconst(c.pair), tapp(tconst(r), x), tapp(tconst(s), x)}));
}

int comb_d(const FilteredOca& o, int f) {
  BasicCombinators c = derived_basic_combinators(o);
  auto x = tvar("x");
  return eval_lambda(
      o, {"x"},
      tapps({tconst(f), tapp(tconst(c.p0), x), tapp(tconst(c.p1), x)}));
}

Report check_basic_combinators(const FilteredOca& o) {
  Report rep;
  rep.suite = "oca-basic-combinators";
  BasicCombinators c = derived_basic_combinators(o);
  const int n = o.n();
  auto wit = [&](std::initializer_list<std::pair<const char*, int>> vs) {
    std::string out;
    for (auto& [k, v] : vs) {
      if (!out.empty()) out += " ";
      out += std::string(k) + "=" + o.name(v);
    }
    return out;
  };

  auto& in_phi = rep.add("members-of-phi");
  Mask closure = app_closure(o, (Mask{1} << o.k) | (Mask{1} << o.s));
  for (int e : {c.b, c.i, c.cflip, c.w, c.tt, c.ff, c.pair, c.p0, c.p1}) {
    ++in_phi.cases;
    if (!o.in_phi(e) || !has_bit(closure, e))
      Report::fail(in_phi, "element " + o.name(e));
  }

  auto& laws = rep.add("inequalities");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int pab = o.apply(o.apply(c.pair, a), b);
      ++laws.cases;
      if (!o.leq(o.apply(o.apply(c.w, a), b), o.apply(o.apply(a, b), b)))
        Report::fail(laws, "w: " + wit({{"a", a}, {"b", b}}));
      if (!o.leq(o.apply(c.i, a), a)) Report::fail(laws, "i: " + wit({{"a", a}}));
      if (!o.leq(o.apply(c.p0, pab), a)) Report::fail(laws, "p0: " + wit({{"a", a}, {"b", b}}));
      if (!o.leq(o.apply(c.p1, pab), b)) Report::fail(laws, "p1: " + wit({{"a", a}, {"b", b}}));
      for (int cc = 0; cc < n; ++cc) {
        if (!o.leq(o.apply(o.apply(o.apply(c.b, a), b), cc), o.apply(a, o.apply(b, cc))))
          Report::fail(laws, "b: " + wit({{"a", a}, {"b", b}, {"c", cc}}));
        if (!o.leq(o.apply(o.apply(o.apply(c.cflip, a), b), cc),
                   o.apply(o.apply(a, cc), b)))
          Report::fail(laws, "cflip: " + wit({{"a", a}, {"b", b}, {"c", cc}}));
      }
    }

  auto& racc = rep.add("pairing-realizers");
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      int ars = comb_a(o, r, s);
      int df = comb_d(o, r);
      for (int cc = 0; cc < n; ++cc) {
        ++racc.cases;
        // rc ≤ a and sc ≤ b imply a(r,s) c ≤ pair a b
        for (int a = 0; a < n; ++a) {
          if (!o.leq(o.apply(r, cc), a)) continue;
          for (int b = 0; b < n; ++b) {
            if (!o.leq(o.apply(s, cc), b)) continue;
            if (!o.leq(o.apply(ars, cc), o.apply(o.apply(c.pair, a), b)))
              Report::fail(racc, "a(r,s): " + wit({{"r", r}, {"s", s}, {"c", cc},
                                                   {"a", a}, {"b", b}}));
          }
        }
        // d(f) ℓ ≤ f (p0 ℓ) (p1 ℓ)
        if (!o.leq(o.apply(df, cc),
                   o.apply(o.apply(r, o.apply(c.p0, cc)), o.apply(c.p1, cc))))
          Report::fail(racc, "d(f): " + wit({{"f", r}, {"l", cc}}));
      }
    }

  return rep;
}

Report check_oca(const FilteredOca& o) {
  Report rep;
  rep.suite = "oca-axioms";
  const int n = o.n();
  auto wit = [&](std::initializer_list<std::pair<const char*, int>> vs) {
    std::string out;
    for (auto& [k, v] : vs) {
      if (!out.empty()) out += " ";
      out += std::string(k) + "=" + o.name(v);
    }
    return out;
  };

  auto& ord = rep.add("partial-order");
  for (int a = 0; a < n; ++a) {
    ++ord.cases;
    if (!o.leq(a, a)) Report::fail(ord, "reflexivity: " + wit({{"a", a}}));
    for (int b = 0; b < n; ++b) {
      if (a != b && o.leq(a, b) && o.leq(b, a))
        Report::fail(ord, "antisymmetry: " + wit({{"a", a}, {"b", b}}));
      if (!o.leq(a, b)) continue;
      for (int c = 0; c < n; ++c)
        if (o.leq(b, c) && !o.leq(a, c))
          Report::fail(ord, "transitivity: " + wit({{"a", a}, {"b", b}, {"c", c}}));
    }
  }

  auto& mono = rep.add("app-monotone");
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2) {
      if (!o.leq(a, a2)) continue;
      for (int b = 0; b < n; ++b) {
        ++mono.cases;
        if (!o.leq(o.apply(a, b), o.apply(a2, b)))
          Report::fail(mono, "left: " + wit({{"a", a}, {"a'", a2}, {"b", b}}));
        if (!o.leq(o.apply(b, a), o.apply(b, a2)))
          Report::fail(mono, "right: " + wit({{"a", a}, {"a'", a2}, {"b", b}}));
      }
    }

  auto& axk = rep.add("axiom-k");
  auto& axs = rep.add("axiom-s");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ++axk.cases;
      if (!o.leq(o.apply(o.apply(o.k, a), b), a))
        Report::fail(axk, wit({{"a", a}, {"b", b}}));
      for (int c = 0; c < n; ++c) {
        ++axs.cases;
        int lhs = o.apply(o.apply(o.apply(o.s, a), b), c);
        int rhs = o.apply(o.apply(a, c), o.apply(b, c));
        if (!o.leq(lhs, rhs)) Report::fail(axs, wit({{"a", a}, {"b", b}, {"c", c}}));
      }
    }

  auto& filt = rep.add("filter");
  filt.cases = 2;
  if (!o.in_phi(o.k) || !o.in_phi(o.s)) Report::fail(filt, "k or s outside phi");
  for (int a = 0; a < n; ++a) {
    if (!o.in_phi(a)) continue;
    for (int b = 0; b < n; ++b)
      if (o.in_phi(b) && !o.in_phi(o.apply(a, b)))
        Report::fail(filt, "not app-closed: " + wit({{"a", a}, {"b", b}}));
  }

  return rep;
}

std::vector<int> realizer_pool(const FilteredOca& o, bool include_derived) {
  std::vector<int> pool;
  Mask seen = 0;
  auto push = [&](int e) {
    if (!has_bit(seen, e)) {
      seen |= Mask{1} << e;
      pool.push_back(e);
    }
  };
  for (int a = 0; a < o.n(); ++a)
    if (o.in_phi(a)) push(a);
  if (include_derived) {
    BasicCombinators c = derived_basic_combinators(o);
    for (int e : {c.b, c.i, c.cflip, c.w, c.tt, c.ff, c.pair, c.p0, c.p1}) push(e);
  }
  return pool;
}

std::optional<int> entails(const FilteredOca& o, int a, int b, bool include_derived) {
  for (int f : realizer_pool(o, include_derived))
    if (o.leq(o.apply(f, a), b)) return f;
  return std::nullopt;
}

Report meet_top_check(const FilteredOca& o) {
  Report rep;
  rep.suite = "oca-meet-top";
  BasicCombinators c = derived_basic_combinators(o);
  const int n = o.n();
  const int top = o.k;
  const int kk = o.apply(o.k, o.k);
  auto wit = [&](std::initializer_list<std::pair<const char*, int>> vs) {
    std::string out;
    for (auto& [k, v] : vs) {
      if (!out.empty()) out += " ";
      out += std::string(k) + "=" + o.name(v);
    }
    return out;
  };

  std::vector<int> a_cache(n * n, -1);
  auto a_of = [&](int r, int s) {
    int& slot = a_cache[r * n + s];
    if (slot < 0) slot = comb_a(o, r, s);
    return slot;
  };

  auto& m1 = rep.add("p0-realizes-left");
  auto& m2 = rep.add("p1-realizes-right");
  auto& m3 = rep.add("pairing-realizer");
  auto& m4 = rep.add("kk-realizes-top");
  for (int a = 0; a < n; ++a) {
    ++m4.cases;
    if (!o.leq(o.apply(kk, a), top)) Report::fail(m4, wit({{"a", a}}));
    for (int b = 0; b < n; ++b) {
      int meet = o.apply(o.apply(c.pair, a), b);
      ++m1.cases;
      ++m2.cases;
      if (!o.leq(o.apply(c.p0, meet), a)) Report::fail(m1, wit({{"a", a}, {"b", b}}));
      if (!o.leq(o.apply(c.p1, meet), b)) Report::fail(m2, wit({{"a", a}, {"b", b}}));
      for (int cc = 0; cc < n; ++cc) {
        ++m3.cases;
        // realizers r of c ⊑ a and s of c ⊑ b, drawn from Φ
        for (int r = 0; r < n; ++r) {
          if (!o.in_phi(r) || !o.leq(o.apply(r, cc), a)) continue;
          for (int s = 0; s < n; ++s) {
            if (!o.in_phi(s) || !o.leq(o.apply(s, cc), b)) continue;
            if (!o.leq(o.apply(a_of(r, s), cc), meet))
              Report::fail(m3, wit({{"a", a}, {"b", b}, {"c", cc}, {"r", r}, {"s", s}}));
          }
        }
      }
    }
  }
  return rep;
}

Prop pvar(int i) {
  auto p = std::make_shared<PropFormula>();
  p->var = i;
  return p;
}

Prop pimp(Prop a, Prop b) {
  auto p = std::make_shared<PropFormula>();
  p->lhs = std::move(a);
  p->rhs = std::move(b);
  return p;
}

bool prop_equal(const Prop& a, const Prop& b) {
  if ((a->var >= 0) != (b->var >= 0)) return false;
  if (a->var >= 0) return a->var == b->var;
  return prop_equal(a->lhs, b->lhs) && prop_equal(a->rhs, b->rhs);
}

HProof ax_k(Prop a, Prop b) {
  auto p = std::make_shared<HilbertProof>();
  p->rule = HilbertProof::AxK;
  p->inst = {std::move(a), std::move(b)};
  return p;
}
HProof ax_s(Prop a, Prop b, Prop c) {
  auto p = std::make_shared<HilbertProof>();
  p->rule = HilbertProof::AxS;
  p->inst = {std::move(a), std::move(b), std::move(c)};
  return p;
}
HProof ax_peirce(Prop a, Prop b) {
  auto p = std::make_shared<HilbertProof>();
  p->rule = HilbertProof::AxPeirce;
  p->inst = {std::move(a), std::move(b)};
  return p;
}
HProof mp(HProof fn, HProof arg) {
  auto p = std::make_shared<HilbertProof>();
  p->rule = HilbertProof::Mp;
  p->fn = std::move(fn);
  p->arg = std::move(arg);
  return p;
}

Prop hilbert_conclusion(const HProof& p) {
  switch (p->rule) {
    case HilbertProof::AxK: {
      if (p->inst.size() != 2) throw StructuralError("K axiom needs two formulas");
      const Prop &a = p->inst[0], &b = p->inst[1];
      return pimp(a, pimp(b, a));
    }
    case HilbertProof::AxS: {
      if (p->inst.size() != 3) throw StructuralError("S axiom needs three formulas");
      const Prop &a = p->inst[0], &b = p->inst[1], &c = p->inst[2];
      return pimp(pimp(a, pimp(b, c)), pimp(pimp(a, b), pimp(a, c)));
    }
    case HilbertProof::AxPeirce: {
      if (p->inst.size() != 2) throw StructuralError("Peirce axiom needs two formulas");
      const Prop &a = p->inst[0], &b = p->inst[1];
      return pimp(pimp(pimp(a, b), a), a);
    }
    case HilbertProof::Mp: {
      if (!p->fn || !p->arg) throw StructuralError("modus ponens needs two premises");
      Prop fn = hilbert_conclusion(p->fn);
      Prop arg = hilbert_conclusion(p->arg);
      if (fn->var >= 0 || !prop_equal(fn->lhs, arg))
        throw StructuralError("modus ponens premise mismatch");
      return fn->rhs;
    }
  }
  throw StructuralError("malformed proof tree");
}

Term hilbert_eval(const HProof& p, int k_elem, int s_elem, int c_elem) {
  hilbert_conclusion(p);  // validate the tree
  std::function<Term(const HProof&)> go = [&](const HProof& q) -> Term {
    switch (q->rule) {
      case HilbertProof::AxK: return tconst(k_elem);
      case HilbertProof::AxS: return tconst(s_elem);
      case HilbertProof::AxPeirce: return tconst(c_elem);
      case HilbertProof::Mp: return tapp(go(q->fn), go(q->arg));
    }
    throw StructuralError("malformed proof tree");
  };
  return go(p);
}

FilteredOca trivial_oca() {
  FilteredOca o;
  o.carrier = {"*"};
  o.leq_rows = {1};
  o.app_table = {0};
  o.k = o.s = 0;
  o.phi = 1;
  return o;
}

FilteredOca boolean_meet_oca(int atoms) {
  const int n = 1 << atoms;
  FilteredOca o;
  for (int i = 0; i < n; ++i) {
    std::string name;
    for (int b = atoms - 1; b >= 0; --b) name += (i >> b) & 1 ? '1' : '0';
    o.carrier.push_back(name.empty() ? "1" : name);
  }
  o.leq_rows.assign(n, 0);
  o.app_table.assign(n * n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if ((a & b) == a) o.leq_rows[a] |= Mask{1} << b;
      o.app_table[a * n + b] = a & b;
    }
  }
  o.k = o.s = n - 1;
  o.phi = Mask{1} << (n - 1);
  return o;
}

}  // namespace kocheck
