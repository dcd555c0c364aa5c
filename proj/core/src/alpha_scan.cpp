#include "coherence/alpha_scan.hpp"

#include <cmath>

namespace coherence {

namespace {

double sanitize(double v) { return std::isnan(v) ? kInfinity : v; }

}  // namespace

bool AlphaScan::attained_at_zero() const { return std::abs(at_zero - infimum) <= 1e-12; }

const std::vector<double>& alpha_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g;
    for (int k = 1; k <= 99; ++k) g.push_back(0.01 * k);
    for (int k = 1; k <= 90; ++k) g.push_back(1.0 + 0.1 * k);
    for (double a : {20.0, 50.0, 100.0, 1000.0}) g.push_back(a);
    return g;
  }();
  return grid;
}

AlphaScan scan_infimum(const std::function<double(double)>& f) {
  AlphaScan scan;
  const auto& grid = alpha_grid();
  scan.at_zero = sanitize(f(0.0));
  scan.at_one = sanitize(f(1.0));
  scan.at_infinity = sanitize(f(kInfinity));

  scan.samples.reserve(grid.size());
  std::size_t best = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    scan.samples.push_back({grid[k], sanitize(f(grid[k]))});
    if (scan.samples[k].value < scan.samples[best].value) best = k;
  }

  // Golden-section search between the neighbours of the grid minimum.
  double lo = best == 0 ? 0.0 : grid[best - 1];
  double hi = best + 1 == grid.size() ? grid[best] : grid[best + 1];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = sanitize(f(x1));
  double f2 = sanitize(f(x2));
  while (hi - lo > 1e-6) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = sanitize(f(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = sanitize(f(x2));
    }
  }
  const double refined_alpha = f1 <= f2 ? x1 : x2;
  const double refined = std::min(f1, f2);
  scan.refinement_error = std::isfinite(f1) && std::isfinite(f2) ? std::abs(f1 - f2) : 0.0;

  scan.infimum_alpha = 0.0;
  scan.infimum = scan.at_zero;
  auto consider = [&](double alpha, double value) {
    if (value < scan.infimum) {
      scan.infimum = value;
      scan.infimum_alpha = alpha;
    }
  };
  for (const auto& s : scan.samples) {
    if (s.alpha > 1.0) break;
    consider(s.alpha, s.value);
  }
  consider(1.0, scan.at_one);
  for (const auto& s : scan.samples) {
    if (s.alpha > 1.0) consider(s.alpha, s.value);
  }
  consider(refined_alpha, refined);
  consider(kInfinity, scan.at_infinity);
  return scan;
}

}  // namespace coherence
