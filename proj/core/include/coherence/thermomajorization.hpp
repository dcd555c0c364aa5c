#pragma once

#include <iosfwd>
#include <vector>

#include "coherence/model.hpp"
#include "coherence/states.hpp"

namespace coherence {

struct CurvePoint {
  double x;
  double y;
};

/// Concave Lorenz curve of a block-diagonal state relative to the Gibbs state:
/// points (Gibbs weight, probability) accumulated in decreasing order of
/// p e^{beta E}. Starts at (0,0), ends at (1,1). Throws NotBlockDiagonal.
std::vector<CurvePoint> thermomajorization_curve(const QuantumState& rho, const GibbsData& gibbs);

/// Piecewise-linear interpolation of a curve at x in [0,1].
double curve_value(const std::vector<CurvePoint>& curve, double x);

/// rho's curve lies on or above sigma's at every breakpoint of both (1e-12).
bool thermomajorizes(const QuantumState& rho, const QuantumState& sigma, const GibbsData& gibbs);

/// CSV with header "x,y", 12 significant digits.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);

}  // namespace coherence
