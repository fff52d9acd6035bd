#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kocheck {

// Every carrier in this toolkit (terms, stacks, algebra elements) is a small
// ordered list; subsets are 64-bit membership masks in load order.
using Mask = std::uint64_t;

constexpr int kMaxUniverse = 64;

inline Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}

inline bool has_bit(Mask m, int i) { return (m >> i) & 1u; }

inline int popcount(Mask m) { return __builtin_popcountll(m); }

// Malformed input: bad file, dimension mismatch, unresolved name. CLI exit 2.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration bound was exceeded. CLI exit 3.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// Enumeration caps. Central defaults, printed into every report header.
struct Caps {
  int max_enum_stacks = 16;    // closed-set enumeration via generator intersections
  int max_brute_stacks = 12;   // brute-force subset oracle
  int max_closed_sets = 64;    // quantified lemma scans / derived carriers
  int term_size_bound = 4;     // app nodes in exhaustive beta checks
  int pred_pairs_exhaustive = 4096;  // predicate-pair scans; sample beyond this
  int max_fun_kind = 4096;     // materialized function-kind sizes
};

// Deterministic sampling generator (splitmix64). All sampling in the toolkit
// flows through one of these, seeded from the CLI.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
};

}  // namespace kocheck
