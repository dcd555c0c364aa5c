#include "coherence/thermomajorization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "coherence/divergence.hpp"
#include "coherence/error.hpp"

namespace coherence {

std::vector<CurvePoint> thermomajorization_curve(const QuantumState& rho, const GibbsData& gibbs) {
  const auto& blocks = rho.system().blocks();
  if (gibbs.weights.size() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "Gibbs data does not match the state's dimension");
  }
  if (!is_block_diagonal(rho.matrix(), blocks)) {
    throw Error(ErrorCode::NotBlockDiagonal, "thermomajorization needs an energy-block-diagonal state");
  }
  const auto spec = block_spectrum(rho.matrix(), blocks, gibbs);
  const std::size_t n = spec.probabilities.size();
  std::vector<double> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = spec.probabilities[i];
    key[i] = p > kSupportCutoff ? std::log(p) - spec.log_weights[i] : -kInfinity;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });

  std::vector<CurvePoint> curve{{0.0, 0.0}};
  double x = 0.0;
  double y = 0.0;
  for (auto i : order) {
    x += std::exp(spec.log_weights[i]);
    y += std::max(spec.probabilities[i], 0.0);
    curve.push_back({x, y});
  }
  return curve;
}

double curve_value(const std::vector<CurvePoint>& curve, double x) {
  if (curve.empty()) return 0.0;
  if (x <= curve.front().x) return curve.front().y;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    if (x <= curve[k].x) {
      const double dx = curve[k].x - curve[k - 1].x;
      if (dx <= 0.0) return curve[k].y;
      const double t = (x - curve[k - 1].x) / dx;
      return curve[k - 1].y + t * (curve[k].y - curve[k - 1].y);
    }
  }
  return curve.back().y;
}

bool thermomajorizes(const QuantumState& rho, const QuantumState& sigma, const GibbsData& gibbs) {
  const auto a = thermomajorization_curve(rho, gibbs);
  const auto b = thermomajorization_curve(sigma, gibbs);
  for (const auto* curve : {&a, &b}) {
    for (const auto& pt : *curve) {
      if (curve_value(a, pt.x) < curve_value(b, pt.x) - 1e-12) return false;
    }
  }
  return true;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
  out << "x,y\n";
  char buf[64];
  for (const auto& pt : curve) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", pt.x, pt.y);
    out << buf;
  }
}

}  // namespace coherence
