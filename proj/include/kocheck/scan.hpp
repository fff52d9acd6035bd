#pragma once

#include <cstdint>
#include <string>

#include "kocheck/oca.hpp"

namespace kocheck {

// The heavy exhaustive scans come in two execution modes over the same
// per-instance kernel: a serial reference and an OpenMP-parallel version.
// Results (counts and first witness) are identical between modes.
enum class ExecMode { Serial, Parallel };

struct LatticeScanSummary {
  std::uint64_t instances = 0;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  // smallest (terms, stacks, pole) encoding of a failing instance
  std::uint64_t first_failure_code = ~0ull;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

// Every realizability lattice with at most max_terms × max_stacks and every
// pole relation: closed-set enumeration by generator intersections against
// the brute-force subset oracle, antitonicity, De Morgan, triple-perp, the
// order-reversing bijection between closed term and stack sets, and
// sup/inf being lub/glb among the closed sets.
LatticeScanSummary scan_all_lattices(int max_terms, int max_stacks,
                                     ExecMode mode = ExecMode::Parallel);

// Single-instance kernel used by the scan; exposed for the unit tests.
bool lattice_instance_ok(int n_terms, int n_stacks, std::uint32_t pole,
                         std::uint64_t* checks, std::string* why);

struct BracketScanSummary {
  std::uint64_t terms = 0;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

// Every term with at most max_app_nodes application nodes over the carrier
// constants and one designated variable y: λ*y(t) is y-free, introduces only
// k and s, stays inside the app-closure of its constants, and satisfies the
// β-inequality eval((λ*y t) u) ≤ eval(t{y:=u}) for every value of u. A
// seeded sample additionally exercises literal closed terms u.
BracketScanSummary scan_bracket_beta(const FilteredOca& o, int max_app_nodes,
                                     ExecMode mode = ExecMode::Parallel,
                                     std::uint64_t sample_pairs = 2000,
                                     std::uint64_t seed = 0);

}  // namespace kocheck
