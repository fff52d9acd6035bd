#include "kocheck/cli.hpp"

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "kocheck/io.hpp"
#include "kocheck/translate.hpp"
#include "kocheck/tripos.hpp"

namespace kocheck {

namespace {

struct CommonOpts {
  std::string structure;
  std::string report_path;
  std::uint64_t seed = 0;
  int max_enum = 16;
  bool exhaustive = false;
  std::uint64_t samples = 256;
  bool timing = false;

  Caps caps() const {
    Caps c;
    c.max_enum_stacks = max_enum;
    c.max_closed_sets = std::max(c.max_closed_sets, 1 << std::min(max_enum, 6));
    if (exhaustive) c.pred_pairs_exhaustive = 1 << 24;
    return c;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool structure_required = true) {
  auto* s = cmd->add_option("--structure", o.structure, "structure file or boolean:n");
  if (structure_required) s->required();
  cmd->add_option("--report", o.report_path, "write the machine-readable report here");
  cmd->add_option("--seed", o.seed, "seed for all deterministic sampling");
  cmd->add_option("--max-enum", o.max_enum, "closed-set enumeration bound");
  cmd->add_flag("--exhaustive", o.exhaustive, "never fall back to sampling");
  cmd->add_option("--samples", o.samples, "sample count past the exhaustive cap");
  cmd->add_flag("--timing", o.timing, "include wall-clock timing in the report");
}

void stamp(Report& rep, const AnyStructure& s) {
  rep.structure = structure_summary(s);
  rep.fingerprint = structure_fingerprint(s);
}

int finish(const std::vector<Report>& reports, const CommonOpts& o, double elapsed_ms) {
  bool all = true;
  for (const auto& rep : reports) {
    bool ok = rep.all_passed();
    all &= ok;
    std::cout << (ok ? "[pass] " : "[FAIL] ") << rep.suite;
    std::uint64_t cases = 0;
    for (const auto& c : rep.checks) cases += c.cases;
    std::cout << " (" << cases << " cases)\n";
    for (const auto& c : rep.checks) {
      if (!c.passed)
        std::cout << "       " << c.name << ": "
                  << (c.witness ? *c.witness : std::string("failed")) << "\n";
      else if (c.note)
        std::cout << "       " << c.name << ": " << *c.note << "\n";
    }
  }
  if (!o.report_path.empty()) {
    std::optional<double> timing;
    if (o.timing) timing = elapsed_ms;
    write_file(o.report_path,
               reports_json(reports, o.caps(), o.seed, timing).dump(2) + "\n");
  }
  return all ? 0 : 1;
}

std::vector<Report> koca_suite(const Koca& k, const CommonOpts&) {
  std::vector<Report> reports;
  reports.push_back(check_koca(k));
  reports.push_back(check_basic_combinators(k));
  reports.push_back(meet_top_check(k));
  reports.push_back(heyting_check(k));
  reports.push_back(double_negation_realizer(k));
  return reports;
}

std::vector<Report> run_check(const AnyStructure& s, const CommonOpts& o, bool widen) {
  std::vector<Report> reports;
  Caps caps = o.caps();
  if (const auto* rl = std::get_if<RealizabilityLattice>(&s)) {
    reports.push_back(lattice_closure_suite(*rl, caps, o.seed));
  } else if (const auto* a = std::get_if<Aks>(&s)) {
    reports.push_back(check_aks_axioms(*a));
    reports.push_back(verify_aks_lemmas(*a, {widen, caps}));
  } else if (const auto* oca = std::get_if<FilteredOca>(&s)) {
    reports.push_back(check_oca(*oca));
    reports.push_back(check_basic_combinators(*oca));
    reports.push_back(meet_top_check(*oca));
  } else if (const auto* x = std::get_if<Ioca>(&s)) {
    reports.push_back(check_ioca(*x));
    reports.push_back(check_basic_combinators(*x));
    reports.push_back(meet_top_check(*x));
    reports.push_back(heyting_check(*x));
  } else if (const auto* k = std::get_if<Koca>(&s)) {
    reports = koca_suite(*k, o);
  } else {
    const auto& q = std::get<ProperQuadruple>(s);
    Report props;
    props.suite = "quadruple-properness";
    auto& derive = props.add("proper");
    derive.cases = 1;
    try {
      Koca k = from_proper_quadruple(q);
      reports = koca_suite(k, o);
    } catch (const PropernessError& e) {
      Report::fail(derive, e.what());
    }
    reports.insert(reports.begin(), props);
  }
  for (auto& rep : reports) stamp(rep, s);
  return reports;
}

Koca require_koca(const AnyStructure& s) {
  if (const auto* k = std::get_if<Koca>(&s)) return *k;
  if (const auto* q = std::get_if<ProperQuadruple>(&s)) return from_proper_quadruple(*q);
  throw StructuralError("this subcommand needs a koca, quadruple, or boolean:n structure");
}

std::vector<Report> run_tripos(const AnyStructure& s, const CommonOpts& o, int index_size) {
  std::vector<Report> reports;
  Koca k = require_koca(s);
  reports.push_back(preorder_check(k, index_size));
  reports.push_back(reindex_check(k, index_size));
  reports.push_back(heyting_pred_check(k, index_size));
  {
    // all maps between index sets of the configured sizes
    Report rep;
    rep.suite = "tripos-forall";
    auto& adj = rep.add("same-realizer-transfer");
    for (int src = 0; src <= index_size; ++src)
      for (int tgt = 1; tgt <= index_size; ++tgt) {
        FiniteFunction f;
        f.source = src;
        f.target = tgt;
        f.graph.assign(src, 0);
        for (;;) {
          Report one = forall_adjunction_check(k, f);
          for (const auto& c : one.checks) {
            adj.cases += c.cases;
            if (!c.passed && adj.passed) Report::fail(adj, *c.witness);
          }
          int i = 0;
          for (; i < src; ++i) {
            if (++f.graph[i] < tgt) break;
            f.graph[i] = 0;
          }
          if (i == src) break;
        }
      }
    reports.push_back(rep);
  }
  {
    Report rep;
    rep.suite = "tripos-beck-chevalley";
    auto& squares = rep.add("squares");
    auto& pw = rep.add("pointwise-equality");
    SplitMix64 rng(o.seed);
    std::uint64_t wanted = std::max<std::uint64_t>(o.samples, 1);
    for (std::uint64_t it = 0; it < wanted; ++it) {
      int isz = 1 + static_cast<int>(rng.below(std::max(index_size, 1)));
      int jsz = static_cast<int>(rng.below(index_size + 1));
      int ksz = static_cast<int>(rng.below(index_size + 1));
      FiniteFunction f, g;
      f.source = jsz;
      f.target = isz;
      g.source = ksz;
      g.target = isz;
      for (int j = 0; j < jsz; ++j)
        f.graph.push_back(static_cast<std::uint16_t>(rng.below(isz)));
      for (int j = 0; j < ksz; ++j)
        g.graph.push_back(static_cast<std::uint16_t>(rng.below(isz)));
      PullbackSquare sq = canonical_pullback(f, g);
      ++squares.cases;
      if (!validate_pullback(sq)) {
        Report::fail(squares, "canonical square failed validation");
        continue;
      }
      Report one = beck_chevalley_check(k, sq);
      for (const auto& c : one.checks) {
        pw.cases += c.cases;
        if (!c.passed && pw.passed) Report::fail(pw, *c.witness);
      }
    }
    reports.push_back(rep);
  }
  reports.push_back(generic_predicate_check(k, index_size));
  reports.push_back(classical_check(k, index_size));
  for (auto& rep : reports) stamp(rep, s);
  return reports;
}

std::vector<Report> run_roundtrip(const AnyStructure& s, const CommonOpts& o,
                                  int index_size) {
  Caps caps = o.caps();
  std::vector<Report> reports;
  PairScanOptions pso{index_size, caps, o.samples, o.seed};
  if (const auto* a = std::get_if<Aks>(&s)) {
    reports.push_back(check_aks_axioms(*a));
    Koca k = aks_to_koca(*a, caps);
    reports.push_back(check_koca(k));
    reports.push_back(streicher_iso_check(*a, pso));
    reports.push_back(galois_check(k, caps));
    reports.push_back(roundtrip_tripos_equivalence(k, pso));
  } else {
    Koca k = require_koca(s);
    Aks derived = koca_to_aks(k);
    reports.push_back(check_aks_axioms(derived));
    Koca back = aks_to_koca(derived, caps);
    reports.push_back(check_koca(back));
    reports.push_back(galois_check(k, caps));
    reports.push_back(streicher_iso_check(derived, pso));
    reports.push_back(roundtrip_tripos_equivalence(k, pso));
  }
  for (auto& rep : reports) stamp(rep, s);
  return reports;
}

std::vector<Report> run_translate(const AnyStructure& s, const CommonOpts& o,
                                  const std::string& direction, bool verify,
                                  const std::string& out_path) {
  Caps caps = o.caps();
  std::vector<Report> reports;
  AnyStructure out;
  if (direction == "koca2aks") {
    Koca k = require_koca(s);
    Aks a = koca_to_aks(k);
    out = a;
    if (verify) {
      reports.push_back(check_aks_axioms(a));
      reports.push_back(verify_aks_lemmas(a, {false, caps}));
    }
  } else if (direction == "aks2koca") {
    const auto* a = std::get_if<Aks>(&s);
    if (!a) throw StructuralError("aks2koca needs an aks structure");
    Koca k = aks_to_koca(*a, caps);
    out = k;
    if (verify) reports = koca_suite(k, o);
  } else {
    throw StructuralError("unknown direction '" + direction + "'");
  }
  Report summary;
  summary.suite = "translate-" + direction;
  auto& done = summary.add("translated");
  done.cases = 1;
  done.note = structure_summary(out);
  reports.insert(reports.begin(), summary);
  if (!out_path.empty()) write_file(out_path, structure_to_json(out).dump(2) + "\n");
  for (auto& rep : reports) stamp(rep, s);
  return reports;
}

std::vector<Report> run_homega(const AnyStructure& s, const CommonOpts& o,
                               const std::string& interp_path,
                               const std::string& deriv_path, bool pa, int adequacy_depth,
                               const std::string& realize) {
  Caps caps = o.caps();
  std::vector<Report> reports;
  Koca k = require_koca(s);
  Interp in = load_interp(interp_path, k, caps);

  if (!deriv_path.empty()) {
    DerivationFile df = load_derivation(deriv_path, in.sig);
    HoSequent seq = check_derivation(k, df.context, df.derivation);
    Report rep;
    rep.suite = "homega-derivation";
    auto& chk = rep.add("conclusion-satisfied");
    chk.note = "realizer " + show_term(k, seq.realizer) + " : " + show_expr(seq.conclusion);
    SatisfyOutcome res = satisfies(k, in, seq);
    chk.cases = res.cases;
    if (!res.satisfied) Report::fail(chk, res.witness);
    reports.push_back(rep);
  }
  if (adequacy_depth > 0) {
    AdequacyOptions opt;
    opt.depth = adequacy_depth;
    // formulas over the declared signature: applied o-valued constants,
    // an open variant on the first base kind, falsum, and one implication
    std::string base = in.sig.base_kinds.empty() ? "" : in.sig.base_kinds.front();
    for (auto& [name, kind] : in.sig.consts) {
      if (!kind->is_arrow() || kind->src->is_arrow() || !kind_equal(kind->tgt, kind_o))
        continue;
      for (auto& [cname, ckind] : in.sig.consts)
        if (!ckind->is_arrow() && kind_equal(ckind, kind->src))
          opt.formula_pool.push_back(eapp(econst(name, kind), econst(cname, ckind)));
      if (!base.empty() && kind_equal(kind->src, kbase(base)))
        opt.formula_pool.push_back(eapp(econst(name, kind), evar("v0", kbase(base))));
    }
    opt.formula_pool.push_back(econst("bot", kind_o));
    if (opt.formula_pool.size() >= 2)
      opt.formula_pool.push_back(eimplies(opt.formula_pool[0], opt.formula_pool[1]));
    if (opt.formula_pool.size() > 6) opt.formula_pool.resize(6);
    for (auto& [cname, ckind] : in.sig.consts)
      if (!ckind->is_arrow()) opt.witness_pool.push_back(econst(cname, ckind));
    if (!base.empty()) {
      opt.witness_pool.push_back(evar("v0", kbase(base)));
      opt.gen_vars.push_back({"v0", kbase(base)});
    }
    reports.push_back(adequacy_suite(k, in, opt));
  }
  if (pa) reports.push_back(pa_axioms_check(k, in));
  if (!realize.empty()) {
    Expr f = parse_homega(in.sig, realize);
    Report rep;
    rep.suite = "homega-theory";
    auto& chk = rep.add("theory-member");
    chk.cases = 1;
    auto r = theory_member(k, in, f);
    if (r)
      chk.note = "realizer " + k.name(*r);
    else
      Report::fail(chk, "no filter element realizes " + show_expr(f));
    reports.push_back(rep);
  }
  for (auto& rep : reports) stamp(rep, s);
  return reports;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"finite model checks for realizability structures"};
  app.require_subcommand(1);

  CommonOpts check_o, translate_o, tripos_o, homega_o, roundtrip_o;
  bool widen = false;
  auto* check_cmd = app.add_subcommand("check", "verify the axioms of a structure");
  add_common(check_cmd, check_o);
  check_cmd->add_flag("--widen", widen, "quantify set lemmas over all subsets");

  std::string direction, out_path;
  bool verify = false;
  auto* translate_cmd = app.add_subcommand("translate", "convert between aks and koca");
  add_common(translate_cmd, translate_o);
  translate_cmd->add_option("--direction", direction, "aks2koca or koca2aks")->required();
  translate_cmd->add_flag("--verify", verify, "check the translated structure");
  translate_cmd->add_option("--out", out_path, "write the translated structure here");

  int tripos_index = 2;
  auto* tripos_cmd = app.add_subcommand("tripos", "indexed-preorder and tripos laws");
  add_common(tripos_cmd, tripos_o);
  tripos_cmd->add_option("--index-size", tripos_index, "largest index set to scan");

  std::string interp_path, deriv_path, realize;
  bool pa = false;
  int adequacy_depth = 0;
  auto* homega_cmd = app.add_subcommand("homega", "higher-order language checks");
  add_common(homega_cmd, homega_o);
  homega_cmd->add_option("--interp", interp_path, "interpretation file")->required();
  homega_cmd->add_option("--check", deriv_path, "derivation file to check");
  homega_cmd->add_flag("--pa", pa, "arithmetic axiom checks");
  homega_cmd->add_option("--adequacy", adequacy_depth, "run the adequacy suite to depth n");
  homega_cmd->add_option("--realize", realize, "search the filter for a realizer");

  int roundtrip_index = 2;
  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "both translations plus the "
                                                        "galois and equivalence checks");
  add_common(roundtrip_cmd, roundtrip_o);
  roundtrip_cmd->add_option("--index-size", roundtrip_index, "largest index set to scan");

  std::vector<std::string> argv = args;
  try {
    std::vector<const char*> cargv;
    cargv.push_back("kocheck");
    for (const auto& a : argv) cargv.push_back(a.c_str());
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto started = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     started)
        .count();
  };

  try {
    if (check_cmd->parsed()) {
      AnyStructure s = load_structure(check_o.structure);
      return finish(run_check(s, check_o, widen), check_o, elapsed_ms());
    }
    if (translate_cmd->parsed()) {
      AnyStructure s = load_structure(translate_o.structure);
      return finish(run_translate(s, translate_o, direction, verify, out_path),
                    translate_o, elapsed_ms());
    }
    if (tripos_cmd->parsed()) {
      AnyStructure s = load_structure(tripos_o.structure);
      return finish(run_tripos(s, tripos_o, tripos_index), tripos_o, elapsed_ms());
    }
    if (homega_cmd->parsed()) {
      AnyStructure s = load_structure(homega_o.structure);
      return finish(run_homega(s, homega_o, interp_path, deriv_path, pa, adequacy_depth,
                               realize),
                    homega_o, elapsed_ms());
    }
    if (roundtrip_cmd->parsed()) {
      AnyStructure s = load_structure(roundtrip_o.structure);
      return finish(run_roundtrip(s, roundtrip_o, roundtrip_index), roundtrip_o,
                    elapsed_ms());
    }
  } catch (const ResourceError& e) {
    std::cerr << "resource bound: " << e.what() << "\n";
    return 3;
  } catch (const PropernessError& e) {
    std::cerr << "properness check failed: " << e.what() << "\n";
    return 1;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace kocheck
