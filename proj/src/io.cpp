#include "kocheck/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace kocheck {

std::string hex64(std::uint64_t v) {
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("cannot write " + path);
  out << content;
}

namespace {

std::vector<std::string> names_array(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array())
    throw StructuralError(std::string("missing array '") + field + "'");
  std::vector<std::string> out;
  for (const auto& v : j[field]) out.push_back(v.get<std::string>());
  return out;
}

struct NameIndex {
  std::map<std::string, int> index;
  explicit NameIndex(const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
  }
  int at(const json& v, const char* what) const {
    auto it = index.find(v.get<std::string>());
    if (it == index.end())
      throw StructuralError(std::string("undeclared ") + what + " '" +
                            v.get<std::string>() + "'");
    return it->second;
  }
};

std::vector<Mask> load_leq(const json& j, const NameIndex& ix, int n) {
  std::vector<Mask> rows(n, 0);
  for (const auto& pair : j.at("leq")) {
    if (!pair.is_array() || pair.size() != 2) throw StructuralError("leq entries are pairs");
    rows[ix.at(pair[0], "element")] |= Mask{1} << ix.at(pair[1], "element");
  }
  return rows;
}

std::vector<std::uint16_t> load_binary_table(const json& j, const char* field,
                                             const NameIndex& a, const NameIndex& b,
                                             const NameIndex& out, int na, int nb) {
  std::vector<std::uint16_t> table(na * nb, 0);
  std::vector<bool> seen(na * nb, false);
  for (const auto& triple : j.at(field)) {
    if (!triple.is_array() || triple.size() != 3)
      throw StructuralError(std::string(field) + " entries are triples");
    int x = a.at(triple[0], field), y = b.at(triple[1], field),
        z = out.at(triple[2], field);
    if (seen[x * nb + y]) throw StructuralError(std::string(field) + " has a duplicate entry");
    seen[x * nb + y] = true;
    table[x * nb + y] = static_cast<std::uint16_t>(z);
  }
  for (int i = 0; i < na * nb; ++i)
    if (!seen[i]) throw StructuralError(std::string(field) + " table is not total");
  return table;
}

Mask load_subset(const json& j, const char* field, const NameIndex& ix) {
  Mask m = 0;
  for (const auto& v : j.at(field)) m |= Mask{1} << ix.at(v, field);
  return m;
}

RealizabilityLattice parse_lattice(const json& j) {
  auto terms = names_array(j, "terms");
  auto stacks = names_array(j, "stacks");
  NameIndex ti(terms), si(stacks);
  std::vector<std::pair<int, int>> pole;
  for (const auto& pair : j.at("pole")) {
    if (!pair.is_array() || pair.size() != 2)
      throw StructuralError("pole entries are pairs");
    pole.push_back({ti.at(pair[0], "term"), si.at(pair[1], "stack")});
  }
  return make_lattice(terms, stacks, pole);
}

Aks parse_aks(const json& j) {
  Aks a;
  a.rl = parse_lattice(j);
  NameIndex ti(a.rl.terms), si(a.rl.stacks);
  const int nt = a.rl.n_terms(), ns = a.rl.n_stacks();

  {
    auto table = load_binary_table(j, "push", ti, si, si, nt, ns);
    a.push.assign(table.begin(), table.end());
  }
  {
    auto table = load_binary_table(j, "app", ti, ti, ti, nt, nt);
    a.app.assign(table.begin(), table.end());
  }
  {
    a.store.assign(ns, 0);
    std::vector<bool> seen(ns, false);
    for (const auto& pair : j.at("store")) {
      if (!pair.is_array() || pair.size() != 2)
        throw StructuralError("store entries are pairs");
      int p = si.at(pair[0], "store"), t = ti.at(pair[1], "store");
      if (seen[p]) throw StructuralError("store has a duplicate entry");
      seen[p] = true;
      a.store[p] = static_cast<std::uint8_t>(t);
    }
    for (int p = 0; p < ns; ++p)
      if (!seen[p]) throw StructuralError("store table is not total");
  }
  a.qp = load_subset(j, "qp", ti);
  a.comb_k = ti.at(j.at("K"), "combinator");
  a.comb_s = ti.at(j.at("S"), "combinator");
  a.comb_cc = ti.at(j.at("cc"), "combinator");
  return a;
}

void parse_oca_fields(const json& j, FilteredOca& o) {
  o.carrier = names_array(j, "carrier");
  if (o.carrier.size() > kMaxUniverse) throw ResourceError("carrier exceeds 64");
  NameIndex ix(o.carrier);
  const int n = o.n();
  o.leq_rows = load_leq(j, ix, n);
  o.app_table = load_binary_table(j, "app", ix, ix, ix, n, n);
  o.k = ix.at(j.at("k"), "element");
  o.s = ix.at(j.at("s"), "element");
  o.phi = load_subset(j, "phi", ix);
}

FilteredOca parse_oca(const json& j) {
  FilteredOca o;
  parse_oca_fields(j, o);
  return o;
}

Ioca parse_ioca(const json& j) {
  Ioca x;
  parse_oca_fields(j, x);
  NameIndex ix(x.carrier);
  x.imp_table = load_binary_table(j, "imp", ix, ix, ix, x.n(), x.n());
  x.e = ix.at(j.at("e"), "element");
  return x;
}

Koca parse_koca(const json& j) {
  Koca x;
  static_cast<Ioca&>(x) = parse_ioca(j);
  NameIndex ix(x.carrier);
  x.c = ix.at(j.at("c"), "element");
  return x;
}

ProperQuadruple parse_quadruple(const json& j) {
  ProperQuadruple q;
  q.carrier = names_array(j, "carrier");
  if (q.carrier.size() > kMaxUniverse) throw ResourceError("carrier exceeds 64");
  NameIndex ix(q.carrier);
  q.leq_rows = load_leq(j, ix, q.n());
  q.imp_table = load_binary_table(j, "imp", ix, ix, ix, q.n(), q.n());
  q.phi = load_subset(j, "phi", ix);
  return q;
}

int parse_boolean_arity(const std::string& kind) {
  std::string num = kind.substr(8);
  if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
    throw StructuralError("malformed boolean:n shorthand '" + kind + "'");
  return std::stoi(num);
}

}  // namespace

AnyStructure parse_structure(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw StructuralError("structure file needs a top-level kind");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "lattice") return parse_lattice(j);
  if (kind == "aks") return parse_aks(j);
  if (kind == "oca") return parse_oca(j);
  if (kind == "ioca") return parse_ioca(j);
  if (kind == "koca") return parse_koca(j);
  if (kind == "quadruple") return parse_quadruple(j);
  if (kind.rfind("boolean:", 0) == 0) return boolean_koca(parse_boolean_arity(kind));
  throw StructuralError("unknown structure kind '" + kind + "'");
}

AnyStructure load_structure(const std::string& source) {
  if (source.rfind("boolean:", 0) == 0) return boolean_koca(parse_boolean_arity(source));
  json j;
  try {
    j = json::parse(read_file(source));
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError("parse error in " + source + ": " + e.what());
  }
  return parse_structure(j);
}

namespace {

json lattice_to_json(const RealizabilityLattice& rl) {
  json j;
  j["kind"] = "lattice";
  j["terms"] = rl.terms;
  j["stacks"] = rl.stacks;
  json pole = json::array();
  for (int t = 0; t < rl.n_terms(); ++t)
    for (int p = 0; p < rl.n_stacks(); ++p)
      if (rl.in_pole(t, p)) pole.push_back({rl.terms[t], rl.stacks[p]});
  j["pole"] = pole;
  return j;
}

json leq_to_json(const std::vector<Mask>& rows, const std::vector<std::string>& names) {
  json out = json::array();
  for (size_t a = 0; a < rows.size(); ++a)
    for (size_t b = 0; b < rows.size(); ++b)
      if (has_bit(rows[a], static_cast<int>(b))) out.push_back({names[a], names[b]});
  return out;
}

json table_to_json(const std::vector<std::uint16_t>& table,
                   const std::vector<std::string>& a, const std::vector<std::string>& b,
                   const std::vector<std::string>& out) {
  json arr = json::array();
  for (size_t x = 0; x < a.size(); ++x)
    for (size_t y = 0; y < b.size(); ++y)
      arr.push_back({a[x], b[y], out[table[x * b.size() + y]]});
  return arr;
}

json subset_to_json(Mask m, const std::vector<std::string>& names) {
  json arr = json::array();
  for (size_t i = 0; i < names.size(); ++i)
    if (has_bit(m, static_cast<int>(i))) arr.push_back(names[i]);
  return arr;
}

void oca_fields_to_json(const FilteredOca& o, json& j) {
  j["carrier"] = o.carrier;
  j["leq"] = leq_to_json(o.leq_rows, o.carrier);
  j["app"] = table_to_json(o.app_table, o.carrier, o.carrier, o.carrier);
  j["k"] = o.carrier[o.k];
  j["s"] = o.carrier[o.s];
  j["phi"] = subset_to_json(o.phi, o.carrier);
}

}  // namespace

json structure_to_json(const AnyStructure& s) {
  json j;
  if (const auto* rl = std::get_if<RealizabilityLattice>(&s)) return lattice_to_json(*rl);
  if (const auto* a = std::get_if<Aks>(&s)) {
    j = lattice_to_json(a->rl);
    j["kind"] = "aks";
    std::vector<std::uint16_t> push(a->push.begin(), a->push.end());
    std::vector<std::uint16_t> app(a->app.begin(), a->app.end());
    j["push"] = table_to_json(push, a->rl.terms, a->rl.stacks, a->rl.stacks);
    j["app"] = table_to_json(app, a->rl.terms, a->rl.terms, a->rl.terms);
    json store = json::array();
    for (int p = 0; p < a->rl.n_stacks(); ++p)
      store.push_back({a->rl.stacks[p], a->rl.terms[a->store[p]]});
    j["store"] = store;
    j["qp"] = subset_to_json(a->qp, a->rl.terms);
    j["K"] = a->rl.terms[a->comb_k];
    j["S"] = a->rl.terms[a->comb_s];
    j["cc"] = a->rl.terms[a->comb_cc];
    return j;
  }
  if (const auto* o = std::get_if<FilteredOca>(&s)) {
    j["kind"] = "oca";
    oca_fields_to_json(*o, j);
    return j;
  }
  if (const auto* x = std::get_if<Ioca>(&s)) {
    j["kind"] = "ioca";
    oca_fields_to_json(*x, j);
    j["imp"] = table_to_json(x->imp_table, x->carrier, x->carrier, x->carrier);
    j["e"] = x->carrier[x->e];
    return j;
  }
  if (const auto* x = std::get_if<Koca>(&s)) {
    j["kind"] = "koca";
    oca_fields_to_json(*x, j);
    j["imp"] = table_to_json(x->imp_table, x->carrier, x->carrier, x->carrier);
    j["e"] = x->carrier[x->e];
    j["c"] = x->carrier[x->c];
    return j;
  }
  const auto& q = std::get<ProperQuadruple>(s);
  j["kind"] = "quadruple";
  j["carrier"] = q.carrier;
  j["leq"] = leq_to_json(q.leq_rows, q.carrier);
  j["imp"] = table_to_json(q.imp_table, q.carrier, q.carrier, q.carrier);
  j["phi"] = subset_to_json(q.phi, q.carrier);
  return j;
}

std::string structure_summary(const AnyStructure& s) {
  if (const auto* rl = std::get_if<RealizabilityLattice>(&s))
    return "lattice(" + std::to_string(rl->n_terms()) + "x" +
           std::to_string(rl->n_stacks()) + ")";
  if (const auto* a = std::get_if<Aks>(&s))
    return "aks(" + std::to_string(a->n_terms()) + " terms)";
  if (const auto* o = std::get_if<FilteredOca>(&s))
    return "oca(" + std::to_string(o->n()) + ")";
  if (const auto* x = std::get_if<Ioca>(&s)) return "ioca(" + std::to_string(x->n()) + ")";
  if (const auto* x = std::get_if<Koca>(&s)) return "koca(" + std::to_string(x->n()) + ")";
  return "quadruple(" + std::to_string(std::get<ProperQuadruple>(s).n()) + ")";
}

std::string structure_fingerprint(const AnyStructure& s) {
  return hex64(fnv1a(structure_to_json(s).dump()));
}

// ---- interpretation files ---------------------------------------------------

namespace {

long encode_value(const json& v, const KindPtr& kind, const Interp& in) {
  if (!kind->is_arrow()) {
    if (kind->base == "o") {
      if (v.is_number_integer()) {
        long idx = v.get<long>();
        if (idx < 0 || idx >= in.alg->n()) throw StructuralError("carrier index out of range");
        return idx;
      }
      std::string name = v.get<std::string>();
      for (int i = 0; i < in.alg->n(); ++i)
        if (in.alg->carrier[i] == name) return i;
      throw StructuralError("unknown carrier element '" + name + "'");
    }
    long size = in.dom_size(kind);
    long idx = v.get<long>();
    if (idx < 0 || idx >= size)
      throw StructuralError("value out of range for kind " + show_kind(kind));
    return idx;
  }
  long src = in.dom_size(kind->src), tgt = in.dom_size(kind->tgt);
  if (!v.is_array() || static_cast<long>(v.size()) != src)
    throw StructuralError("function value for " + show_kind(kind) + " needs " +
                          std::to_string(src) + " entries");
  long acc = 0, place = 1;
  for (long i = 0; i < src; ++i) {
    acc += encode_value(v[i], kind->tgt, in) * place;
    place *= tgt;
  }
  return acc;
}

}  // namespace

Interp load_interp(const std::string& path, const Koca& alg, const Caps& caps) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError("parse error in " + path + ": " + e.what());
  }
  Interp in;
  in.alg = &alg;
  in.caps = caps;
  if (j.contains("kinds"))
    for (auto& [name, size] : j["kinds"].items()) {
      if (name == "o") throw StructuralError("kind o is fixed to the carrier");
      long n = size.get<long>();
      if (n <= 0) throw StructuralError("kind sizes must be positive");
      in.kind_sizes[name] = n;
      in.sig.base_kinds.push_back(name);
    }
  if (j.contains("consts"))
    for (auto& [name, val_spec] : j["consts"].items()) {
      KindPtr k = parse_kind(in.sig, val_spec.at("kind").get<std::string>());
      in.sig.consts[name] = k;
      in.const_values[name] = encode_value(val_spec.at("value"), k, in);
    }
  return in;
}

namespace {

Deriv parse_deriv_node(const json& j, const HoSignature& sig) {
  std::string rule = j.at("rule").get<std::string>();
  if (rule == "ax") return dax(j.at("index").get<int>());
  if (rule == "imp_i")
    return dimp_i(j.at("var").get<std::string>(),
                  parse_homega(sig, j.at("assume").get<std::string>()),
                  parse_deriv_node(j.at("sub"), sig));
  if (rule == "imp_e")
    return dimp_e(parse_deriv_node(j.at("fn"), sig), parse_deriv_node(j.at("arg"), sig));
  if (rule == "forall_i")
    return dforall_i(j.at("var").get<std::string>(),
                     parse_kind(sig, j.at("kind").get<std::string>()),
                     parse_deriv_node(j.at("sub"), sig));
  if (rule == "forall_e")
    return dforall_e(parse_homega(sig, j.at("witness").get<std::string>()),
                     parse_deriv_node(j.at("sub"), sig));
  throw StructuralError("unknown rule '" + rule + "'");
}

}  // namespace

DerivationFile load_derivation(const std::string& path, const HoSignature& sig) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError("parse error in " + path + ": " + e.what());
  }
  DerivationFile out;
  HoSignature scoped = sig;
  if (j.contains("context"))
    for (const auto& d : j["context"]) {
      std::string var = d.at("var").get<std::string>();
      Expr f = parse_homega(scoped, d.at("formula").get<std::string>());
      out.context.push_back({var, f});
    }
  out.derivation = parse_deriv_node(j.at("derivation"), scoped);
  return out;
}

// ---- reports ----------------------------------------------------------------

json report_json(const Report& rep, const Caps& caps, std::uint64_t seed,
                 std::optional<double> timing_ms) {
  json j;
  j["suite"] = rep.suite;
  j["structure"] = rep.structure;
  j["fingerprint"] = rep.fingerprint;
  j["seed"] = seed;
  j["caps"] = {{"max_enum_stacks", caps.max_enum_stacks},
               {"max_brute_stacks", caps.max_brute_stacks},
               {"max_closed_sets", caps.max_closed_sets},
               {"term_size_bound", caps.term_size_bound},
               {"pred_pairs_exhaustive", caps.pred_pairs_exhaustive},
               {"max_fun_kind", caps.max_fun_kind}};
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json cj;
    cj["name"] = c.name;
    cj["status"] = c.passed ? "pass" : "fail";
    cj["cases"] = c.cases;
    if (c.witness) cj["witness"] = *c.witness;
    if (c.note) cj["note"] = *c.note;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["passed"] = rep.all_passed();
  if (timing_ms)
    j["timing_ms"] = *timing_ms;
  else
    j["timing_ms"] = nullptr;
  return j;
}

json reports_json(const std::vector<Report>& reps, const Caps& caps, std::uint64_t seed,
                  std::optional<double> timing_ms) {
  json j;
  j["tool"] = "kocheck";
  bool all = true;
  json suites = json::array();
  for (const auto& r : reps) {
    suites.push_back(report_json(r, caps, seed, std::nullopt));
    all &= r.all_passed();
  }
  j["suites"] = suites;
  j["passed"] = all;
  if (timing_ms)
    j["timing_ms"] = *timing_ms;
  else
    j["timing_ms"] = nullptr;
  return j;
}

}  // namespace kocheck
