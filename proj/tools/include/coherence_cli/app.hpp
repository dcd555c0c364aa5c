#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace coherence::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNumericalError = 2, kBoundViolation = 3 };

struct JobSpec {
  std::string command;  // compute | tradeoff | monotones | thermomajorize | ising-spectrum | ising-histogram | verify
  std::string input;
  std::string output;
  std::optional<double> beta;
  std::optional<double> epsilon;
  std::uint64_t seed = 42;
  std::size_t samples = 0;
  std::optional<std::size_t> n;
  std::string suite = "tradeoff";
};

/// Runs one job. Reports go to `output` when set, otherwise to `out`;
/// diagnostics go to `err`. Returns an ExitCode.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

}  // namespace coherence::cli
