#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace coherence {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Sampled curve alpha -> value with its located infimum over [0, inf].
struct AlphaScan {
  struct Sample {
    double alpha;
    double value;
  };

  std::vector<Sample> samples;  // grid points, ascending, endpoints excluded
  double at_zero = 0.0;
  double at_one = 0.0;
  double at_infinity = 0.0;

  double infimum_alpha = 0.0;  // kInfinity when the alpha -> inf limit wins
  double infimum = 0.0;
  double refinement_error = 0.0;

  /// True when the value at alpha = 0 equals the infimum to 1e-12.
  bool attained_at_zero() const;
};

/// The fixed alpha grid: 0.01k (k = 1..99), 1 + 0.1k (k = 1..90), 20, 50, 100, 1000.
const std::vector<double>& alpha_grid();

/// Minimizes f over [0, inf]. `f` must accept 0, 1 and kInfinity, where it is
/// expected to use the closed-form limits. The grid minimum is refined by
/// golden-section search between its neighbours down to width 1e-6.
AlphaScan scan_infimum(const std::function<double(double)>& f);

}  // namespace coherence
