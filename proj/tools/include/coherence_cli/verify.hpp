#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coherence_cli/io.hpp"

namespace coherence::cli {

/// Tally of one property over a sweep.
struct CheckTally {
  std::string name;
  std::size_t count = 0;
  std::size_t failures = 0;
  double worst_slack = 0.0;  // most negative rhs - lhs seen (0 when never evaluated)

  void record(double slack, bool ok);
  bool passed() const { return failures == 0; }
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckTally> checks;
  bool passed() const;
  Json to_json() const;
};

/// Suites: tradeoff, tradeoff-qutrits, monotonicity, binomial, ising, epsilon.
/// `samples` = 0 picks the suite's default; `n` overrides its size parameter.
/// Random states come from mt19937_64 seeded with seed + sample index.
SuiteResult run_suite(const std::string& suite, std::size_t samples, std::optional<std::size_t> n,
                      std::uint64_t seed, double beta = 1.0);

const std::vector<std::string>& suite_names();

}  // namespace coherence::cli
