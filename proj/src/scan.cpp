#include "kocheck/scan.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <map>

namespace kocheck {

namespace {

inline int ctz32(std::uint32_t v) { return __builtin_ctz(v); }

}  // namespace

bool lattice_instance_ok(int nt, int ns, std::uint32_t pole, std::uint64_t* checks,
                         std::string* why) {
  const int full_t = (1 << nt) - 1;
  const int full_s = (1 << ns) - 1;
  std::uint16_t rows[6] = {0}, cols[6] = {0};
  for (int t = 0; t < nt; ++t)
    for (int p = 0; p < ns; ++p)
      if ((pole >> (t * ns + p)) & 1u) {
        rows[t] |= std::uint16_t(1u << p);
        cols[p] |= std::uint16_t(1u << t);
      }

  // perps of every subset, built incrementally
  std::uint16_t perp_t[64], perp_s[64];
  perp_t[0] = std::uint16_t(full_s);
  for (int l = 1; l <= full_t; ++l) perp_t[l] = perp_t[l & (l - 1)] & rows[ctz32(l)];
  perp_s[0] = std::uint16_t(full_t);
  for (int p = 1; p <= full_s; ++p) perp_s[p] = perp_s[p & (p - 1)] & cols[ctz32(p)];

  auto cl_s = [&](int p) { return perp_t[perp_s[p]]; };
  auto cl_t = [&](int l) { return perp_s[perp_t[l]]; };
  std::uint64_t local_checks = 0;
  auto fail = [&](const char* what) {
    if (why)
      *why = std::string(what) + " (terms=" + std::to_string(nt) +
             " stacks=" + std::to_string(ns) + " pole=" + std::to_string(pole) + ")";
    if (checks) *checks += local_checks;
    return false;
  };

  // brute-force closed stack sets
  std::uint64_t brute = 0;
  for (int p = 0; p <= full_s; ++p) {
    ++local_checks;
    if (cl_s(p) == p) brute |= std::uint64_t(1) << p;
  }

  // generator intersections: worklist saturation starting from Π
  std::uint64_t gen = std::uint64_t(1) << full_s;
  std::uint16_t work[64];
  int top = 0;
  work[top++] = std::uint16_t(full_s);
  while (top) {
    int cur = work[--top];
    for (int t = 0; t < nt; ++t) {
      int next = cur & rows[t];
      if (!((gen >> next) & 1u)) {
        gen |= std::uint64_t(1) << next;
        work[top++] = std::uint16_t(next);
      }
    }
  }
  ++local_checks;
  if (gen != brute) return fail("generator enumeration differs from brute force");

  // antitonicity over all comparable pairs, De Morgan over all pairs
  for (int l1 = 0; l1 <= full_t; ++l1)
    for (int l2 = 0; l2 <= full_t; ++l2) {
      ++local_checks;
      if ((l1 & l2) == l1 && (perp_t[l2] & perp_t[l1]) != perp_t[l2])
        return fail("term antitonicity");
      if (perp_t[l1 | l2] != (perp_t[l1] & perp_t[l2])) return fail("term De Morgan");
    }
  for (int p1 = 0; p1 <= full_s; ++p1)
    for (int p2 = 0; p2 <= full_s; ++p2) {
      ++local_checks;
      if ((p1 & p2) == p1 && (perp_s[p2] & perp_s[p1]) != perp_s[p2])
        return fail("stack antitonicity");
      if (perp_s[p1 | p2] != (perp_s[p1] & perp_s[p2])) return fail("stack De Morgan");
    }

  // triple perp and idempotence
  for (int p = 0; p <= full_s; ++p) {
    ++local_checks;
    if (perp_s[cl_s(p)] != perp_s[p]) return fail("stack triple perp");
    if (cl_s(cl_s(p)) != cl_s(p)) return fail("closure idempotence");
    if ((cl_s(p) & p) != p) return fail("closure not increasing");
  }
  for (int l = 0; l <= full_t; ++l) {
    ++local_checks;
    if (perp_t[cl_t(l)] != perp_t[l]) return fail("term triple perp");
  }

  // the perp maps restricted to closed sets invert each other and reverse order
  std::uint16_t closed[64];
  int n_closed = 0;
  for (int p = 0; p <= full_s; ++p)
    if ((brute >> p) & 1u) closed[n_closed++] = std::uint16_t(p);
  int n_closed_t = 0;
  for (int l = 0; l <= full_t; ++l)
    if (cl_t(l) == l) ++n_closed_t;
  ++local_checks;
  if (n_closed != n_closed_t) return fail("closed set counts differ");
  for (int i = 0; i < n_closed; ++i) {
    ++local_checks;
    int p = closed[i];
    int l = perp_s[p];
    if (cl_t(l) != l) return fail("perp of closed not closed");
    if (perp_t[l] != p) return fail("perp maps do not invert");
  }

  // sup and inf are the glb/lub among closed sets
  for (int i = 0; i < n_closed; ++i)
    for (int j = 0; j < n_closed; ++j) {
      int p = closed[i], q = closed[j];
      int meet = p & q;
      int join = cl_s(p | q);
      ++local_checks;
      if (cl_s(meet) != meet) return fail("intersection of closed not closed");
      for (int r = 0; r < n_closed; ++r) {
        int rr = closed[r];
        bool below_both = (rr & meet) == rr;
        if (((rr & p) == rr && (rr & q) == rr) != below_both)
          return fail("intersection not the glb");
        bool above_both = (join & rr) == join;
        if (((p & rr) == p && (q & rr) == q) != above_both)
          return fail("closed union not the lub");
      }
    }

  if (checks) *checks += local_checks;
  return true;
}

LatticeScanSummary scan_all_lattices(int max_terms, int max_stacks, ExecMode mode) {
  if (max_terms > 5 || max_stacks > 5 || max_terms * max_stacks > 24)
    throw ResourceError("pole space too large to scan");
  LatticeScanSummary sum;
  for (int nt = 0; nt <= max_terms; ++nt)
    for (int ns = 0; ns <= max_stacks; ++ns) {
      const std::uint64_t total = std::uint64_t(1) << (nt * ns);
      auto encode = [&](std::uint64_t pole) {
        return (std::uint64_t(nt) << 40) | (std::uint64_t(ns) << 32) | pole;
      };

      if (mode == ExecMode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel
        {
          LatticeScanSummary local;
#pragma omp for schedule(static) nowait
          for (long long pole = 0; pole < static_cast<long long>(total); ++pole) {
            std::string why;
            ++local.instances;
            if (!lattice_instance_ok(nt, ns, static_cast<std::uint32_t>(pole),
                                     &local.checks, &why)) {
              ++local.failures;
              std::uint64_t code = encode(pole);
              if (code < local.first_failure_code) {
                local.first_failure_code = code;
                local.first_failure = why;
              }
            }
          }
#pragma omp critical
          {
            sum.instances += local.instances;
            sum.checks += local.checks;
            sum.failures += local.failures;
            if (local.first_failure_code < sum.first_failure_code) {
              sum.first_failure_code = local.first_failure_code;
              sum.first_failure = local.first_failure;
            }
          }
        }
        continue;
#endif
      }
      for (std::uint64_t pole = 0; pole < total; ++pole) {
        std::string why;
        ++sum.instances;
        if (!lattice_instance_ok(nt, ns, static_cast<std::uint32_t>(pole), &sum.checks,
                                 &why)) {
          ++sum.failures;
          std::uint64_t code = encode(pole);
          if (code < sum.first_failure_code) {
            sum.first_failure_code = code;
            sum.first_failure = why;
          }
        }
      }
    }
  return sum;
}

namespace {

// all terms with exactly `nodes` application nodes over the given leaves
void build_terms(const std::vector<Term>& leaves, int max_nodes,
                 std::vector<std::vector<Term>>& by_nodes) {
  by_nodes.assign(max_nodes + 1, {});
  by_nodes[0] = leaves;
  for (int a = 1; a <= max_nodes; ++a)
    for (int i = 0; i < a; ++i)
      for (const Term& f : by_nodes[i])
        for (const Term& x : by_nodes[a - 1 - i]) by_nodes[a].push_back(tapp(f, x));
}

struct BracketShared {
  const FilteredOca& o;
  std::vector<Term> terms;         // with the variable allowed
  std::vector<Term> closed_terms;  // constants only
  std::vector<Mask> closure_by_mask;
};

bool bracket_term_ok(const BracketShared& sh, const Term& t, std::uint64_t* checks,
                     std::string* why) {
  const FilteredOca& o = sh.o;
  std::uint64_t local = 0;
  auto fail = [&](const std::string& what) {
    if (why) *why = what + ": " + show_term(o, t);
    if (checks) *checks += local;
    return false;
  };

  Term compiled = lambda_star(o, "y", t);
  ++local;
  if (contains_var(compiled, "y")) return fail("compiled term mentions y");

  Mask ks = (Mask{1} << o.k) | (Mask{1} << o.s);
  Mask allowed = term_constants(t) | ks;
  Mask got = term_constants(compiled);
  ++local;
  if ((got & ~allowed) != 0) return fail("fresh constants beyond k and s");
  Mask closure = sh.closure_by_mask[term_constants(t) | ks];
  ++local;
  if ((got & ~closure) != 0) return fail("constants escape the app-closure");

  int compiled_val = eval_term(o, compiled);
  for (int v = 0; v < o.n(); ++v) {
    ++local;
    int lhs = o.apply(compiled_val, v);
    int rhs = eval_term_env(o, t, {{"y", v}});
    if (!o.leq(lhs, rhs))
      return fail("beta inequality at y=" + o.name(v));
  }
  if (checks) *checks += local;
  return true;
}

}  // namespace

BracketScanSummary scan_bracket_beta(const FilteredOca& o, int max_app_nodes,
                                     ExecMode mode, std::uint64_t sample_pairs,
                                     std::uint64_t seed) {
  BracketShared sh{o, {}, {}, {}};
  {
    std::vector<Term> leaves;
    for (int c = 0; c < o.n(); ++c) leaves.push_back(tconst(c));
    leaves.push_back(tvar("y"));
    std::vector<std::vector<Term>> by_nodes;
    build_terms(leaves, max_app_nodes, by_nodes);
    for (auto& level : by_nodes)
      for (auto& t : level) sh.terms.push_back(t);

    leaves.pop_back();
    build_terms(leaves, max_app_nodes, by_nodes);
    for (auto& level : by_nodes)
      for (auto& t : level) sh.closed_terms.push_back(t);

    sh.closure_by_mask.assign(std::size_t(1) << o.n(), 0);
    for (Mask m = 0; m < (Mask{1} << o.n()); ++m)
      sh.closure_by_mask[m] = app_closure(o, m);
  }

  BracketScanSummary sum;
  sum.terms = sh.terms.size();
  const long long n = static_cast<long long>(sh.terms.size());
  long long first_bad = -1;
  std::string first_why;

  if (mode == ExecMode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::uint64_t local_checks = 0, local_failures = 0;
      long long local_bad = -1;
      std::string local_why;
#pragma omp for schedule(dynamic, 256) nowait
      for (long long i = 0; i < n; ++i) {
        std::string why;
        if (!bracket_term_ok(sh, sh.terms[i], &local_checks, &why)) {
          ++local_failures;
          if (local_bad < 0 || i < local_bad) {
            local_bad = i;
            local_why = why;
          }
        }
      }
#pragma omp critical
      {
        sum.checks += local_checks;
        sum.failures += local_failures;
        if (local_bad >= 0 && (first_bad < 0 || local_bad < first_bad)) {
          first_bad = local_bad;
          first_why = local_why;
        }
      }
    }
#else
    mode = ExecMode::Serial;
#endif
  }
  if (mode == ExecMode::Serial) {
    for (long long i = 0; i < n; ++i) {
      std::string why;
      if (!bracket_term_ok(sh, sh.terms[i], &sum.checks, &why)) {
        ++sum.failures;
        if (first_bad < 0) {
          first_bad = i;
          first_why = why;
        }
      }
    }
  }
  if (first_bad >= 0) sum.first_failure = first_why;

  // seeded literal pairs: substitution agrees with environment evaluation
  // and the β-inequality holds for the substituted term itself
  for (std::uint64_t it = 0; it < sample_pairs; ++it) {
    SplitMix64 rng(seed + it * 0x9e3779b97f4a7c15ull);
    const Term& t = sh.terms[rng.below(sh.terms.size())];
    const Term& u = sh.closed_terms[rng.below(sh.closed_terms.size())];
    ++sum.checks;
    int uval = eval_term(o, u);
    int direct = eval_term(o, substitute(t, "y", u));
    int via_env = eval_term_env(o, t, {{"y", uval}});
    int applied = eval_term(o, tapp(lambda_star(o, "y", t), u));
    if (direct != via_env || !o.leq(applied, direct)) {
      ++sum.failures;
      if (sum.first_failure.empty())
        sum.first_failure = "literal pair: t=" + show_term(o, t) + " u=" + show_term(o, u);
    }
  }
  return sum;
}

}  // namespace kocheck
