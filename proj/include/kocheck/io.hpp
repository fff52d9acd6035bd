#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kocheck/aks.hpp"
#include "kocheck/homega.hpp"
#include "kocheck/ioca.hpp"
#include "kocheck/lattice.hpp"
#include "kocheck/report.hpp"

namespace kocheck {

using json = nlohmann::ordered_json;

using AnyStructure =
    std::variant<RealizabilityLattice, Aks, FilteredOca, Ioca, Koca, ProperQuadruple>;

// Load from a path or the boolean:n shorthand. The file is structured text
// with a top-level kind field; carriers are named arrays and every relation
// or function table an explicit pair/triple list.
AnyStructure load_structure(const std::string& path_or_shorthand);
AnyStructure parse_structure(const json& j);

json structure_to_json(const AnyStructure& s);
std::string structure_summary(const AnyStructure& s);
// FNV-1a over the canonical serialization.
std::string structure_fingerprint(const AnyStructure& s);

// Finite interpretation file for the higher-order checks: base kind sizes
// plus constant values (integers for base kinds, carrier names for o,
// nested arrays for function kinds).
Interp load_interp(const std::string& path, const Koca& alg, const Caps& caps);

// Derivation file: a root context and a rule tree.
struct DerivationFile {
  std::vector<Declaration> context;
  Deriv derivation;
};
DerivationFile load_derivation(const std::string& path, const HoSignature& sig);

json report_json(const Report& rep, const Caps& caps, std::uint64_t seed,
                 std::optional<double> timing_ms);
json reports_json(const std::vector<Report>& reps, const Caps& caps, std::uint64_t seed,
                  std::optional<double> timing_ms);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace kocheck
