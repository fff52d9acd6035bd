#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>

#include "kocheck/base.hpp"

namespace kocheck {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;             // how many instances were scanned
  std::optional<std::string> witness;  // first counterexample, load order
  std::optional<std::string> note;     // informational, never a failure
};

// One verification suite: a named list of checks with witnesses on failure.
// Deterministic for fixed input and seed.
struct Report {
  std::string suite;
  std::string structure;     // description of the structure under test
  std::string fingerprint;   // content hash of the (canonicalized) input
  // deque keeps references from add() stable while later checks are added
  std::deque<CheckResult> checks;

  CheckResult& add(const std::string& name) {
    checks.push_back(CheckResult{name, true, 0, std::nullopt, std::nullopt});
    return checks.back();
  }
  // Record a failure; keeps only the first witness per check.
  static void fail(CheckResult& c, const std::string& witness) {
    if (c.passed) {
      c.passed = false;
      c.witness = witness;
    }
  }
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// FNV-1a, used for structure fingerprints.
inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v);

}  // namespace kocheck
