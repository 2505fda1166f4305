#pragma once
// Acceptance battery: eleven numbered criteria covering the validation
// axioms, the abelian-category calculus, dualities and round trips, and the
// geometric backend at desk scale.  Every criterion is deterministic for a
// fixed seed and yields exactly one pass/fail line.

#include <cstdint>
#include <string>
#include <vector>

#include "modhodge/curve.hpp"

namespace modhodge {

struct SuiteCase {
  int number = 0;
  std::string name;
  bool ok = false;
  std::string detail;  // check count on success, first failure otherwise
};

struct SuiteResult {
  std::vector<SuiteCase> cases;

  bool ok() const {
    for (auto& c : cases)
      if (!c.ok) return false;
    return true;
  }
  std::string str() const;  // one line per criterion
};

// shared geometric sample: ten triples with at most three support points a
// side, multiplicities up to four, coordinates from a small palette
std::vector<CurveTriple> suite_triples(std::uint64_t seed);

SuiteCase run_criterion(int number, std::uint64_t seed);  // 1..11
SuiteResult run_suite(std::uint64_t seed);

constexpr std::uint64_t kSuiteSeed = 20260815;

}  // namespace modhodge
