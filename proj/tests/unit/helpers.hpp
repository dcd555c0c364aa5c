#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "coherence/linalg.hpp"

namespace testing {

using coherence::Complex;
using coherence::ComplexMatrix;

inline ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

// Square root of a 2x2 PSD matrix: (A + sqrt(det) I) / sqrt(tr A + 2 sqrt(det)).
inline ComplexMatrix sqrt2x2(const ComplexMatrix& a) {
  const double det = std::max((a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real(), 0.0);
  const double s = std::sqrt(det);
  const double t = std::sqrt(a.trace().real() + 2.0 * s);
  return (a + s * ComplexMatrix::Identity(2, 2)) / t;
}

inline ComplexMatrix inverse2x2(const ComplexMatrix& a) {
  const Complex det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  ComplexMatrix inv(2, 2);
  inv << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
  return inv / det;
}

// ln n! by direct summation.
inline double log_factorial(std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 2; k <= n; ++k) s += std::log(static_cast<double>(k));
  return s;
}

inline double log_choose(std::size_t n, std::size_t k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace testing
