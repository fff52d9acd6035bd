#include "kocheck/homega.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <functional>

namespace kocheck {

// ---- kinds ----------------------------------------------------------------

KindPtr kbase(const std::string& name) {
  auto k = std::make_shared<HKind>();
  k->base = name;
  return k;
}

KindPtr karrow(KindPtr src, KindPtr tgt) {
  auto k = std::make_shared<HKind>();
  k->src = std::move(src);
  k->tgt = std::move(tgt);
  return k;
}

const KindPtr kind_o = kbase("o");

bool kind_equal(const KindPtr& a, const KindPtr& b) {
  if (a->is_arrow() != b->is_arrow()) return false;
  if (!a->is_arrow()) return a->base == b->base;
  return kind_equal(a->src, b->src) && kind_equal(a->tgt, b->tgt);
}

std::string show_kind(const KindPtr& k) {
  if (!k->is_arrow()) return k->base;
  std::string lhs = show_kind(k->src);
  if (k->src->is_arrow()) lhs = "(" + lhs + ")";
  return lhs + " -> " + show_kind(k->tgt);
}

// ---- expressions ----------------------------------------------------------

Expr evar(const std::string& name, KindPtr k) {
  auto e = std::make_shared<HoExpr>();
  e->node = HoExpr::Var;
  e->name = name;
  e->kind = std::move(k);
  return e;
}

Expr econst(const std::string& name, KindPtr k) {
  auto e = std::make_shared<HoExpr>();
  e->node = HoExpr::ConstE;
  e->name = name;
  e->kind = std::move(k);
  return e;
}

Expr elam(const std::string& var, KindPtr var_kind, Expr body) {
  auto e = std::make_shared<HoExpr>();
  e->node = HoExpr::Lam;
  e->name = var;
  e->binder = std::move(var_kind);
  e->kind = karrow(e->binder, body->kind);
  e->a = std::move(body);
  return e;
}

Expr eapp(Expr fn, Expr arg) {
  if (!fn->kind->is_arrow())
    throw StructuralError("applied expression of base kind " + show_kind(fn->kind));
  if (!kind_equal(fn->kind->src, arg->kind))
    throw StructuralError("kind mismatch: expected " + show_kind(fn->kind->src) +
                          ", got " + show_kind(arg->kind));
  auto e = std::make_shared<HoExpr>();
  e->node = HoExpr::App;
  e->kind = fn->kind->tgt;
  e->a = std::move(fn);
  e->b = std::move(arg);
  return e;
}

Expr eimplies(Expr a, Expr b) {
  if (!kind_equal(a->kind, kind_o) || !kind_equal(b->kind, kind_o))
    throw StructuralError("implication needs kind o on both sides");
  auto e = std::make_shared<HoExpr>();
  e->node = HoExpr::Implies;
  e->kind = kind_o;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

Expr eforall(const std::string& var, KindPtr var_kind, Expr body) {
  if (!kind_equal(body->kind, kind_o))
    throw StructuralError("quantified body must have kind o");
  auto e = std::make_shared<HoExpr>();
  e->node = HoExpr::Forall;
  e->name = var;
  e->binder = std::move(var_kind);
  e->kind = kind_o;
  e->a = std::move(body);
  return e;
}

namespace {

bool alpha_eq(const Expr& a, const Expr& b, std::vector<std::string>& sa,
              std::vector<std::string>& sb) {
  if (a->node != b->node) return false;
  switch (a->node) {
    case HoExpr::Var: {
      // bound occurrences compare by binder position, free ones by name
      for (int i = static_cast<int>(sa.size()) - 1; i >= 0; --i) {
        bool ba = sa[i] == a->name, bb = sb[i] == b->name;
        if (ba || bb) return ba && bb;
      }
      return a->name == b->name && kind_equal(a->kind, b->kind);
    }
    case HoExpr::ConstE:
      return a->name == b->name && kind_equal(a->kind, b->kind);
    case HoExpr::App:
    case HoExpr::Implies:
      return alpha_eq(a->a, b->a, sa, sb) && alpha_eq(a->b, b->b, sa, sb);
    case HoExpr::Lam:
    case HoExpr::Forall: {
      if (!kind_equal(a->binder, b->binder)) return false;
      sa.push_back(a->name);
      sb.push_back(b->name);
      bool ok = alpha_eq(a->a, b->a, sa, sb);
      sa.pop_back();
      sb.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const Expr& a, const Expr& b) {
  std::vector<std::string> sa, sb;
  return alpha_eq(a, b, sa, sb);
}

std::string show_expr(const Expr& e) {
  switch (e->node) {
    case HoExpr::Var:
    case HoExpr::ConstE:
      return e->name;
    case HoExpr::Lam:
      return "\\" + e->name + ":" + show_kind(e->binder) + ". " + show_expr(e->a);
    case HoExpr::App: {
      std::string lhs = show_expr(e->a);
      if (e->a->node != HoExpr::App && e->a->node != HoExpr::Var &&
          e->a->node != HoExpr::ConstE)
        lhs = "(" + lhs + ")";
      std::string rhs = show_expr(e->b);
      if (e->b->node != HoExpr::Var && e->b->node != HoExpr::ConstE)
        rhs = "(" + rhs + ")";
      return lhs + " " + rhs;
    }
    case HoExpr::Implies: {
      std::string lhs = show_expr(e->a);
      if (e->a->node == HoExpr::Implies || e->a->node == HoExpr::Forall ||
          e->a->node == HoExpr::Lam)
        lhs = "(" + lhs + ")";
      return lhs + " => " + show_expr(e->b);
    }
    case HoExpr::Forall:
      return "forall " + e->name + ":" + show_kind(e->binder) + ". " + show_expr(e->a);
  }
  return "?";
}

namespace {

void collect_free(const Expr& e, std::vector<std::string>& bound,
                  std::vector<std::pair<std::string, KindPtr>>& out) {
  switch (e->node) {
    case HoExpr::Var: {
      if (std::find(bound.begin(), bound.end(), e->name) != bound.end()) return;
      for (auto& [n, k] : out)
        if (n == e->name) return;
      out.push_back({e->name, e->kind});
      return;
    }
    case HoExpr::ConstE:
      return;
    case HoExpr::App:
    case HoExpr::Implies:
      collect_free(e->a, bound, out);
      collect_free(e->b, bound, out);
      return;
    case HoExpr::Lam:
    case HoExpr::Forall:
      bound.push_back(e->name);
      collect_free(e->a, bound, out);
      bound.pop_back();
      return;
  }
}

}  // namespace

std::vector<std::pair<std::string, KindPtr>> free_vars(const Expr& e) {
  std::vector<std::string> bound;
  std::vector<std::pair<std::string, KindPtr>> out;
  collect_free(e, bound, out);
  return out;
}

bool var_free_in(const Expr& e, const std::string& name) {
  for (auto& [n, k] : free_vars(e))
    if (n == name) return true;
  return false;
}

Expr subst_expr(const Expr& e, const std::string& name, const Expr& value) {
  switch (e->node) {
    case HoExpr::Var:
      if (e->name == name) {
        if (!kind_equal(e->kind, value->kind))
          throw StructuralError("substitution kind mismatch for " + name);
        return value;
      }
      return e;
    case HoExpr::ConstE:
      return e;
    case HoExpr::App: {
      Expr fn = subst_expr(e->a, name, value);
      Expr arg = subst_expr(e->b, name, value);
      return fn == e->a && arg == e->b ? e : eapp(fn, arg);
    }
    case HoExpr::Implies: {
      Expr lhs = subst_expr(e->a, name, value);
      Expr rhs = subst_expr(e->b, name, value);
      return lhs == e->a && rhs == e->b ? e : eimplies(lhs, rhs);
    }
    case HoExpr::Lam:
    case HoExpr::Forall: {
      if (e->name == name) return e;  // shadowed
      std::string binder = e->name;
      Expr body = e->a;
      if (var_free_in(value, binder) && var_free_in(body, name)) {
        // rename the binder out of the way
        std::string fresh = binder;
        do {
          fresh += "'";
        } while (var_free_in(body, fresh) || var_free_in(value, fresh));
        body = subst_expr(body, binder, evar(fresh, e->binder));
        binder = fresh;
      }
      Expr nb = subst_expr(body, name, value);
      if (nb == e->a && binder == e->name) return e;
      return e->node == HoExpr::Lam ? elam(binder, e->binder, nb)
                                    : eforall(binder, e->binder, nb);
    }
  }
  return e;
}

Expr leibniz_eq(const Expr& m, const Expr& n) {
  if (!kind_equal(m->kind, n->kind))
    throw StructuralError("equality across kinds " + show_kind(m->kind) + " / " +
                          show_kind(n->kind));
  std::string y = "_y";
  while (var_free_in(m, y) || var_free_in(n, y)) y += "'";
  KindPtr pk = karrow(m->kind, kind_o);
  Expr yv = evar(y, pk);
  return eforall(y, pk, eimplies(eapp(yv, m), eapp(yv, n)));
}

// ---- parsing --------------------------------------------------------------

bool HoSignature::has_base(const std::string& k) const {
  if (k == "o") return true;
  return std::find(base_kinds.begin(), base_kinds.end(), k) != base_kinds.end();
}

namespace {

struct Lexer {
  const std::string& text;
  size_t pos = 0;

  void skip() {
    while (pos < text.size() && isspace((unsigned char)text[pos])) ++pos;
  }
  bool eof() {
    skip();
    return pos >= text.size();
  }
  int offset() {
    skip();
    return static_cast<int>(pos);
  }
  bool peek(const char* tok) {
    skip();
    size_t len = strlen(tok);
    if (text.compare(pos, len, tok) != 0) return false;
    // keywords must not run into identifier characters
    if (isalpha((unsigned char)tok[0])) {
      size_t end = pos + len;
      if (end < text.size() && (isalnum((unsigned char)text[end]) || text[end] == '_'))
        return false;
    }
    return true;
  }
  bool eat(const char* tok) {
    if (!peek(tok)) return false;
    pos += strlen(tok);
    return true;
  }
  void expect(const char* tok) {
    if (!eat(tok)) throw HoParseError(std::string("expected '") + tok + "'", offset());
  }
  std::string ident() {
    skip();
    size_t start = pos;
    if (pos < text.size() && (isalpha((unsigned char)text[pos]) || text[pos] == '_')) {
      ++pos;
      while (pos < text.size() &&
             (isalnum((unsigned char)text[pos]) || text[pos] == '_' || text[pos] == '\''))
        ++pos;
    }
    if (start == pos) throw HoParseError("expected identifier", offset());
    return text.substr(start, pos - start);
  }
};

struct ExprParser {
  const HoSignature& sig;
  Lexer lx;
  std::vector<std::pair<std::string, KindPtr>> scope;

  KindPtr kind() {
    KindPtr lhs = kind_atom();
    if (lx.eat("->")) return karrow(lhs, kind());
    return lhs;
  }
  KindPtr kind_atom() {
    if (lx.eat("(")) {
      KindPtr k = kind();
      lx.expect(")");
      return k;
    }
    int off = lx.offset();
    std::string name = lx.ident();
    if (!sig.has_base(name)) throw HoParseError("unknown kind '" + name + "'", off);
    return kbase(name);
  }

  Expr expr() {
    if (lx.eat("\\")) return binder(false);
    if (lx.eat("forall")) return binder(true);
    return implication();
  }
  Expr binder(bool is_forall) {
    int off = lx.offset();
    std::string var = lx.ident();
    lx.expect(":");
    KindPtr k = kind();
    lx.expect(".");
    scope.push_back({var, k});
    Expr body = expr();
    scope.pop_back();
    try {
      return is_forall ? eforall(var, k, body) : elam(var, k, body);
    } catch (const StructuralError& e) {
      throw HoParseError(e.what(), off);
    }
  }
  Expr implication() {
    int off = lx.offset();
    Expr lhs = equality();
    if (lx.eat("=>")) {
      Expr rhs = lx.peek("\\") || lx.peek("forall") ? expr() : implication();
      try {
        return eimplies(lhs, rhs);
      } catch (const StructuralError& e) {
        throw HoParseError(e.what(), off);
      }
    }
    return lhs;
  }
  Expr equality() {
    int off = lx.offset();
    Expr lhs = application();
    if (lx.eat("==")) {
      Expr rhs = application();
      try {
        return leibniz_eq(lhs, rhs);
      } catch (const StructuralError& e) {
        throw HoParseError(e.what(), off);
      }
    }
    return lhs;
  }
  Expr application() {
    int off = lx.offset();
    Expr acc = atom();
    for (;;) {
      lx.skip();
      if (lx.eof() || lx.peek(")") || lx.peek("=>") || lx.peek("==") || lx.peek("."))
        return acc;
      Expr arg = atom();
      try {
        acc = eapp(acc, arg);
      } catch (const StructuralError& e) {
        throw HoParseError(e.what(), off);
      }
    }
  }
  Expr atom() {
    if (lx.eat("(")) {
      Expr e = expr();
      lx.expect(")");
      return e;
    }
    int off = lx.offset();
    if (lx.eat("bot")) return econst("bot", kind_o);
    std::string name = lx.ident();
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) return evar(name, it->second);
    auto cit = sig.consts.find(name);
    if (cit != sig.consts.end()) return econst(name, cit->second);
    throw HoParseError("unbound identifier '" + name + "'", off);
  }
};

}  // namespace

KindPtr parse_kind(const HoSignature& sig, const std::string& text) {
  ExprParser p{sig, Lexer{text}, {}};
  KindPtr k = p.kind();
  if (!p.lx.eof()) throw HoParseError("trailing input", p.lx.offset());
  return k;
}

Expr parse_homega(const HoSignature& sig, const std::string& text) {
  ExprParser p{sig, Lexer{text}, {}};
  Expr e = p.expr();
  if (!p.lx.eof()) throw HoParseError("trailing input", p.lx.offset());
  return e;
}

// ---- semantics ------------------------------------------------------------

long Interp::dom_size(const KindPtr& k) const {
  if (!k->is_arrow()) {
    if (k->base == "o") return alg->n();
    auto it = kind_sizes.find(k->base);
    if (it == kind_sizes.end())
      throw StructuralError("kind '" + k->base + "' has no interpretation");
    return it->second;
  }
  long src = dom_size(k->src), tgt = dom_size(k->tgt);
  long total = 1;
  for (long i = 0; i < src; ++i) {
    total *= tgt;
    if (total > caps.max_fun_kind)
      throw ResourceError("function kind " + show_kind(k) + " exceeds the cap");
  }
  return total;
}

long sem_apply(long f, long x, long /*src_size*/, long tgt_size) {
  long p = 1;
  for (long i = 0; i < x; ++i) p *= tgt_size;
  return (f / p) % tgt_size;
}

namespace {

long interp_rec(const Interp& in, const Expr& e, Assignment& env) {
  switch (e->node) {
    case HoExpr::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == e->name) return it->second;
      throw StructuralError("unassigned variable '" + e->name + "'");
    }
    case HoExpr::ConstE: {
      auto it = in.const_values.find(e->name);
      if (it != in.const_values.end()) return it->second;
      if (e->name == "bot" && kind_equal(e->kind, kind_o)) return bottom_of(*in.alg);
      throw StructuralError("constant '" + e->name + "' has no interpretation");
    }
    case HoExpr::Lam: {
      long src = in.dom_size(e->binder);
      long tgt = in.dom_size(e->kind->tgt);
      long acc = 0, place = 1;
      env.push_back({e->name, 0});
      for (long s = 0; s < src; ++s) {
        env.back().second = s;
        acc += interp_rec(in, e->a, env) * place;
        place *= tgt;
      }
      env.pop_back();
      return acc;
    }
    case HoExpr::App: {
      long f = interp_rec(in, e->a, env);
      long x = interp_rec(in, e->b, env);
      return sem_apply(f, x, in.dom_size(e->a->kind->src), in.dom_size(e->a->kind->tgt));
    }
    case HoExpr::Implies: {
      long a = interp_rec(in, e->a, env);
      long b = interp_rec(in, e->b, env);
      return in.alg->impl(static_cast<int>(a), static_cast<int>(b));
    }
    case HoExpr::Forall: {
      long src = in.dom_size(e->binder);
      Mask values = 0;
      env.push_back({e->name, 0});
      for (long s = 0; s < src; ++s) {
        env.back().second = s;
        values |= Mask{1} << interp_rec(in, e->a, env);
      }
      env.pop_back();
      auto inf = inf_of(in.alg->leq_rows, values);
      if (!inf) throw ContractError("carrier misses an infimum");
      return *inf;
    }
  }
  throw StructuralError("malformed expression");
}

}  // namespace

long interpret(const Interp& in, const Expr& e, const Assignment& assign) {
  Assignment env = assign;
  return interp_rec(in, e, env);
}

// ---- derivations ----------------------------------------------------------

Deriv dax(int index) {
  auto d = std::make_shared<DerivationNode>();
  d->rule = DerivationNode::Ax;
  d->ax_index = index;
  return d;
}
Deriv dimp_i(const std::string& var, Expr assume, Deriv sub) {
  auto d = std::make_shared<DerivationNode>();
  d->rule = DerivationNode::ImpI;
  d->var = var;
  d->assume = std::move(assume);
  d->d1 = std::move(sub);
  return d;
}
Deriv dimp_e(Deriv fn, Deriv arg) {
  auto d = std::make_shared<DerivationNode>();
  d->rule = DerivationNode::ImpE;
  d->d1 = std::move(fn);
  d->d2 = std::move(arg);
  return d;
}
Deriv dforall_i(const std::string& var, KindPtr kind, Deriv sub) {
  auto d = std::make_shared<DerivationNode>();
  d->rule = DerivationNode::ForallI;
  d->var = var;
  d->var_kind = std::move(kind);
  d->d1 = std::move(sub);
  return d;
}
Deriv dforall_e(Expr witness, Deriv sub) {
  auto d = std::make_shared<DerivationNode>();
  d->rule = DerivationNode::ForallE;
  d->witness = std::move(witness);
  d->d1 = std::move(sub);
  return d;
}

HoSequent check_derivation(const Koca& alg, const std::vector<Declaration>& context,
                           const Deriv& d) {
  switch (d->rule) {
    case DerivationNode::Ax: {
      if (d->ax_index < 0 || d->ax_index >= static_cast<int>(context.size()))
        throw StructuralError("axiom index outside the context");
      return {context, tvar(context[d->ax_index].var), context[d->ax_index].formula};
    }
    case DerivationNode::ImpI: {
      if (!kind_equal(d->assume->kind, kind_o))
        throw StructuralError("assumed formula must have kind o");
      for (const auto& decl : context)
        if (decl.var == d->var)
          throw StructuralError("hypothesis variable '" + d->var + "' already declared");
      std::vector<Declaration> extended = context;
      extended.push_back({d->var, d->assume});
      HoSequent sub = check_derivation(alg, extended, d->d1);
      Term realizer = tapp(tconst(alg.e), lambda_star(alg, d->var, sub.realizer));
      return {context, realizer, eimplies(d->assume, sub.conclusion)};
    }
    case DerivationNode::ImpE: {
      HoSequent fn = check_derivation(alg, context, d->d1);
      HoSequent arg = check_derivation(alg, context, d->d2);
      if (fn.conclusion->node != HoExpr::Implies)
        throw StructuralError("left premise of the elimination is not an implication");
      if (!alpha_equal(fn.conclusion->a, arg.conclusion))
        throw StructuralError("elimination premises disagree: " +
                              show_expr(fn.conclusion->a) + " vs " +
                              show_expr(arg.conclusion));
      return {context, tapp(fn.realizer, arg.realizer), fn.conclusion->b};
    }
    case DerivationNode::ForallI: {
      HoSequent sub = check_derivation(alg, context, d->d1);
      for (const auto& decl : context)
        if (var_free_in(decl.formula, d->var))
          throw StructuralError("generalized variable '" + d->var +
                                "' is free in the context");
      for (auto& [n, k] : free_vars(sub.conclusion))
        if (n == d->var && !kind_equal(k, d->var_kind))
          throw StructuralError("generalized variable '" + d->var +
                                "' occurs with kind " + show_kind(k));
      return {context, sub.realizer, eforall(d->var, d->var_kind, sub.conclusion)};
    }
    case DerivationNode::ForallE: {
      HoSequent sub = check_derivation(alg, context, d->d1);
      if (sub.conclusion->node != HoExpr::Forall)
        throw StructuralError("premise of the instantiation is not a quantifier");
      if (!kind_equal(sub.conclusion->binder, d->witness->kind))
        throw StructuralError("witness kind mismatch");
      Expr inst = subst_expr(sub.conclusion->a, sub.conclusion->name, d->witness);
      return {context, sub.realizer, inst};
    }
  }
  throw StructuralError("malformed derivation");
}

// ---- satisfaction ---------------------------------------------------------

SatisfyOutcome satisfies(const Koca& alg, const Interp& in, const HoSequent& seq) {
  SatisfyOutcome out;
  // free expression variables across the whole sequent
  std::vector<std::pair<std::string, KindPtr>> vars;
  {
    auto add_from = [&](const Expr& e) {
      for (auto& [n, k] : free_vars(e)) {
        bool seen = false;
        for (auto& [vn, vk] : vars) seen |= vn == n;
        if (!seen) vars.push_back({n, k});
      }
    };
    for (const auto& decl : seq.context) add_from(decl.formula);
    add_from(seq.conclusion);
  }

  std::vector<long> sizes;
  for (auto& [n, k] : vars) sizes.push_back(in.dom_size(k));

  Assignment assign;
  for (auto& [n, k] : vars) assign.push_back({n, 0});

  const int nctx = static_cast<int>(seq.context.size());
  std::vector<int> ctx_val(nctx);
  std::vector<std::vector<int>> below(nctx);

  for (;;) {
    long concl = interpret(in, seq.conclusion, assign);
    for (int i = 0; i < nctx; ++i) {
      ctx_val[i] = static_cast<int>(interpret(in, seq.context[i].formula, assign));
      below[i].clear();
      for (int x = 0; x < alg.n(); ++x)
        if (alg.leq(x, ctx_val[i])) below[i].push_back(x);
    }
    // every tuple b with b_i ≤ ⟦A_i⟧
    std::vector<size_t> pick(nctx, 0);
    for (;;) {
      ++out.cases;
      std::vector<std::pair<std::string, int>> env;
      for (int i = 0; i < nctx; ++i)
        env.push_back({seq.context[i].var, below[i][pick[i]]});
      int val = eval_term_env(alg, seq.realizer, env);
      if (!alg.leq(val, static_cast<int>(concl))) {
        out.satisfied = false;
        std::string w = "assignment(";
        for (size_t v = 0; v < vars.size(); ++v)
          w += vars[v].first + "=" + std::to_string(assign[v].second) +
               (v + 1 < vars.size() ? "," : "");
        w += ") hyps(";
        for (int i = 0; i < nctx; ++i)
          w += seq.context[i].var + "=" + alg.name(below[i][pick[i]]) +
               (i + 1 < nctx ? "," : "");
        out.witness = w + ")";
        return out;
      }
      int i = 0;
      for (; i < nctx; ++i) {
        if (++pick[i] < below[i].size()) break;
        pick[i] = 0;
      }
      if (i == nctx) break;
    }
    size_t v = 0;
    for (; v < vars.size(); ++v) {
      if (++assign[v].second < sizes[v]) break;
      assign[v].second = 0;
    }
    if (v == vars.size()) break;
  }
  return out;
}

// ---- adequacy -------------------------------------------------------------

namespace {

std::string context_key(const std::vector<Declaration>& ctx) {
  std::string k;
  for (const auto& d : ctx) k += d.var + ":" + show_expr(d.formula) + ";";
  return k;
}

struct AdequacyEnum {
  const Koca& alg;
  const AdequacyOptions& opt;
  std::map<std::string, std::vector<std::pair<Deriv, Expr>>> memo;

  const std::vector<std::pair<Deriv, Expr>>& derive(
      const std::vector<Declaration>& ctx, int depth) {
    std::string key = context_key(ctx) + "#" + std::to_string(depth);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    std::vector<std::pair<Deriv, Expr>> out;
    for (size_t i = 0; i < ctx.size(); ++i)
      out.push_back({dax(static_cast<int>(i)), ctx[i].formula});

    if (depth > 1) {
      const auto& subs = derive(ctx, depth - 1);
      // implication introduction over the formula pool
      if (static_cast<int>(ctx.size()) < opt.max_context) {
        for (const Expr& a : opt.formula_pool) {
          std::string hyp = "x" + std::to_string(ctx.size() + 1);
          std::vector<Declaration> ext = ctx;
          ext.push_back({hyp, a});
          for (const auto& [sd, sc] : derive(ext, depth - 1))
            out.push_back({dimp_i(hyp, a, sd), eimplies(a, sc)});
        }
      }
      // implication elimination over matching pairs
      for (const auto& [d1, c1] : subs) {
        if (c1->node != HoExpr::Implies) continue;
        for (const auto& [d2, c2] : subs)
          if (alpha_equal(c1->a, c2)) out.push_back({dimp_e(d1, d2), c1->b});
      }
      // quantifier introduction: free variables of the conclusion plus the
      // configured extra candidates, subject to the freshness side condition
      for (const auto& [sd, sc] : subs) {
        auto candidates = free_vars(sc);
        for (auto& gv : opt.gen_vars) {
          bool present = false;
          for (auto& [n, k] : candidates) present |= n == gv.first;
          if (!present) candidates.push_back(gv);
        }
        for (auto& [n, k] : candidates) {
          bool in_ctx = false;
          for (const auto& decl : ctx) in_ctx |= var_free_in(decl.formula, n);
          if (in_ctx) continue;
          out.push_back({dforall_i(n, k, sd), eforall(n, k, sc)});
        }
      }
      // quantifier elimination over the witness pool
      for (const auto& [sd, sc] : subs) {
        if (sc->node != HoExpr::Forall) continue;
        for (const Expr& w : opt.witness_pool) {
          if (!kind_equal(w->kind, sc->binder)) continue;
          out.push_back({dforall_e(w, sd), subst_expr(sc->a, sc->name, w)});
        }
      }
    }
    return memo[key] = std::move(out);
  }
};

}  // namespace

namespace {

void count_rules(const Deriv& d, std::uint64_t counts[5]) {
  ++counts[static_cast<int>(d->rule)];
  if (d->d1) count_rules(d->d1, counts);
  if (d->d2) count_rules(d->d2, counts);
}

}  // namespace

Report adequacy_suite(const Koca& alg, const Interp& in, const AdequacyOptions& opt) {
  Report rep;
  rep.suite = "homega-adequacy";
  auto& adq = rep.add("derivations-satisfied");
  auto& cov = rep.add("rule-coverage");

  AdequacyEnum en{alg, opt, {}};
  std::vector<std::vector<Declaration>> roots;
  roots.push_back({});
  for (size_t i = 0; i < opt.formula_pool.size(); ++i)
    roots.push_back({{"x1", opt.formula_pool[i]}});

  std::uint64_t rules[5] = {0, 0, 0, 0, 0};
  for (const auto& root : roots) {
    for (const auto& [d, concl] : en.derive(root, opt.depth)) {
      HoSequent seq = check_derivation(alg, root, d);
      if (!alpha_equal(seq.conclusion, concl))
        Report::fail(adq, "enumerator/checker disagree on " + show_expr(concl));
      SatisfyOutcome res = satisfies(alg, in, seq);
      ++adq.cases;
      count_rules(d, rules);
      if (!res.satisfied)
        Report::fail(adq, show_expr(seq.conclusion) + " " + res.witness);
    }
  }
  for (std::uint64_t r : rules) cov.cases += r;
  cov.note = "ax " + std::to_string(rules[0]) + ", imp_i " + std::to_string(rules[1]) +
             ", imp_e " + std::to_string(rules[2]) + ", forall_i " +
             std::to_string(rules[3]) + ", forall_e " + std::to_string(rules[4]);
  return rep;
}

// ---- arithmetic -----------------------------------------------------------

namespace {

int identity_realizer(const Koca& alg) {
  Term i = lambda_star(alg, "x", tvar("x"));
  return eval_term(alg, tapp(tconst(alg.e), i));
}

}  // namespace

Report leibniz_check(const Koca& alg, const Interp& in, const Expr& m, const Expr& n) {
  Report rep;
  rep.suite = "homega-leibniz";
  auto& chk = rep.add("identity-realizes-equality");
  long vm = interpret(in, m), vn = interpret(in, n);
  if (vm != vn) {
    chk.note = "skipped: denotations differ (" + std::to_string(vm) + " vs " +
               std::to_string(vn) + ")";
    return rep;
  }
  ++chk.cases;
  int r = identity_realizer(alg);
  long v = interpret(in, leibniz_eq(m, n));
  if (!alg.leq(r, static_cast<int>(v)))
    Report::fail(chk, show_expr(m) + " == " + show_expr(n));
  return rep;
}

Expr nat_formula(const HoSignature& sig, const std::string& zero_name,
                 const std::string& succ_name, const std::string& z_var) {
  KindPtr kI = sig.consts.at(zero_name);
  KindPtr pk = karrow(kI, kind_o);
  Expr x = evar("_x", pk);
  Expr y = evar("_n", kI);
  Expr zero = econst(zero_name, kI);
  Expr succ = econst(succ_name, sig.consts.at(succ_name));
  Expr step = eforall("_n", kI, eimplies(eapp(x, y), eapp(x, eapp(succ, y))));
  Expr body = eimplies(step, eimplies(eapp(x, zero), eapp(x, evar(z_var, kI))));
  return eforall("_x", pk, body);
}

Report pa_axioms_check(const Koca& alg, const Interp& in, const std::string& zero_name,
                       const std::string& succ_name) {
  Report rep;
  rep.suite = "homega-pa";
  KindPtr kI = in.sig.consts.at(zero_name);
  KindPtr kSucc = in.sig.consts.at(succ_name);
  const long nI = in.dom_size(kI);
  const long zero_val = in.const_values.at(zero_name);
  const long succ_fun = in.const_values.at(succ_name);
  auto succ_at = [&](long x) { return sem_apply(succ_fun, x, nI, nI); };

  Expr zero = econst(zero_name, kI);
  Expr succ = econst(succ_name, kSucc);
  auto numeral = [&](int k) {
    Expr e = zero;
    for (int i = 0; i < k; ++i) e = eapp(succ, e);
    return e;
  };

  // equalities that hold in the model are realized by e(λ*x.x)
  auto& eqs = rep.add("equational-axioms");
  const int r_id = identity_realizer(alg);
  for (int p = 0; p <= nI; ++p)
    for (int q = p; q <= nI; ++q) {
      long vp = interpret(in, numeral(p)), vq = interpret(in, numeral(q));
      if (vp != vq) continue;
      ++eqs.cases;
      long v = interpret(in, leibniz_eq(numeral(p), numeral(q)));
      if (!alg.leq(r_id, static_cast<int>(v)))
        Report::fail(eqs, "succ^" + std::to_string(p) + "(zero) == succ^" +
                              std::to_string(q) + "(zero)");
    }

  // succ ≠ zero, evaluated honestly
  Expr xv = evar("_x", kI);
  Expr succ_ne_zero =
      eforall("_x", kI, eimplies(leibniz_eq(eapp(succ, xv), zero), econst("bot", kind_o)));
  const long v_interp = interpret(in, succ_ne_zero);

  auto& cross = rep.add("succ-nonzero-interpreter-vs-direct");
  {
    ++cross.cases;
    // direct evaluation, independent of the interpreter recursion
    const int bot = bottom_of(alg);
    long fun_count = 1;
    for (long i = 0; i < nI; ++i) fun_count *= alg.n();
    Mask outer = 0;
    for (long s = 0; s < nI; ++s) {
      Mask inner = 0;
      for (long f = 0; f < fun_count; ++f) {
        int at_succ = static_cast<int>(sem_apply(f, succ_at(s), nI, alg.n()));
        int at_zero = static_cast<int>(sem_apply(f, zero_val, nI, alg.n()));
        inner |= Mask{1} << alg.impl(at_succ, at_zero);
      }
      auto eq_val = inf_of(alg.leq_rows, inner);
      outer |= Mask{1} << alg.impl(*eq_val, bot);
    }
    auto direct = inf_of(alg.leq_rows, outer);
    if (!direct || *direct != v_interp)
      Report::fail(cross, "interpreter " + std::to_string(v_interp) + " vs direct " +
                              std::to_string(direct ? *direct : -1));
  }

  bool premise = true;
  for (long s = 0; s < nI; ++s) premise &= succ_at(s) != zero_val;
  Term xs = lambda_star(alg, "x", tapp(tvar("x"), tconst(alg.s)));
  const int r_xs = eval_term(alg, tapp(tconst(alg.e), xs));
  const bool realized = alg.leq(r_xs, static_cast<int>(v_interp));
  if (premise) {
    auto& pos = rep.add("succ-nonzero-realized");
    ++pos.cases;
    if (!realized) Report::fail(pos, "e(\\x. x s) not below the axiom value");
  } else {
    auto& hon = rep.add("succ-nonzero-honest");
    ++hon.cases;
    hon.note = std::string("model has succ s = zero for some s; realizer below value: ") +
               (realized ? "true" : "false");
  }

  // relativized induction: e(λ*x.x) realizes ∀z(N(z) ⇒ N(z))
  auto& rel = rep.add("nat-relativized-induction");
  {
    ++rel.cases;
    Expr nz = nat_formula(in.sig, zero_name, succ_name, "_z");
    Expr f = eforall("_z", kI, eimplies(nz, nz));
    long v = interpret(in, f);
    if (!alg.leq(r_id, static_cast<int>(v)))
      Report::fail(rel, "e(\\x.x) not below forall z (N(z) => N(z))");
  }
  return rep;
}

std::optional<int> theory_member(const Koca& alg, const Interp& in, const Expr& f) {
  if (!free_vars(f).empty())
    throw ContractError("theory membership needs a closed formula");
  long v = interpret(in, f);
  std::vector<int> pool = realizer_pool(alg, true);
  {
    int ei = identity_realizer(alg);
    if (std::find(pool.begin(), pool.end(), ei) == pool.end()) pool.push_back(ei);
  }
  for (int a : pool)
    if (alg.leq(a, static_cast<int>(v))) return a;
  return std::nullopt;
}

}  // namespace kocheck
