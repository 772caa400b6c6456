#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wigmod {

inline constexpr std::uint64_t kDefaultSelftestSeed = 1729;

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;  // worst residuals, counts
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
  std::string rendered;  // deterministic summary table (no timing)
};

/// Runs the full acceptance suite at the given seed. The determinism
/// criterion re-runs the other nine and byte-compares the rendered
/// tables. Never throws; failures land in the report.
SelftestReport run_selftest(std::uint64_t seed = kDefaultSelftestSeed);

/// Seed from the WIGNER_SEED environment variable, or the default.
std::uint64_t selftest_seed_from_env();

}  // namespace wigmod
