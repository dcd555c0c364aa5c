#include "coherence/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coherence/error.hpp"

namespace coherence {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadAlpha: return "BadAlpha";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::WrongSystemShape: return "WrongSystemShape";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::RangeExceeded: return "RangeExceeded";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::NotBlockDiagonal: return "NotBlockDiagonal";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::AmbiguousBlocking: return "AmbiguousBlocking";
    case ErrorCode::QfiOutOfRange: return "QfiOutOfRange";
  }
  return "Unknown";
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= rel_tol * max_abs(a);
}

HermitianEigensystem eigh(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "eigh expects a square matrix");
  }
  if (!is_hermitian(a)) {
    throw Error(ErrorCode::NonHermitian,
                "max|A - A^dagger| = " + std::to_string(max_abs(a - a.adjoint())));
  }
  // Symmetrize so roundoff-level asymmetry does not leak into the solver.
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonHermitian, "eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix reconstruct(const ComplexMatrix& vectors, const RealVector& values) {
  return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

ComplexMatrix mat_pow(const HermitianEigensystem& eig, double alpha, double scale) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::BadAlpha, "mat_pow needs a finite alpha >= 0");
  }
  const auto n = eig.eigenvalues.size();
  if (n > 0 && eig.eigenvalues.minCoeff() < -1e-10 * scale) {
    throw Error(ErrorCode::NotPSD,
                "min eigenvalue " + std::to_string(eig.eigenvalues.minCoeff()));
  }
  RealVector powered(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = std::max(eig.eigenvalues[i], 0.0);
    powered[i] = lambda > 0.0 ? std::pow(lambda, alpha) : 0.0;
  }
  return reconstruct(eig.eigenvectors, powered);
}

ComplexMatrix mat_pow(const ComplexMatrix& a, double alpha) {
  return mat_pow(eigh(a), alpha, max_abs(a));
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Complex trace(const ComplexMatrix& a) { return a.trace(); }

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

}  // namespace coherence
