#pragma once

#include <complex>

#include <Eigen/Dense>

namespace coherence {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigenpairs of a Hermitian matrix; eigenvalues ascending, eigenvectors as columns.
struct HermitianEigensystem {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

double max_abs(const ComplexMatrix& a);

/// max|A - A^dagger| <= rel_tol * max|A|.
bool is_hermitian(const ComplexMatrix& a, double rel_tol = 1e-12);

/// Throws ErrorCode::NonHermitian when the symmetry check fails.
HermitianEigensystem eigh(const ComplexMatrix& a);

/// Fractional power of a positive semidefinite matrix. Eigenvalues in
/// [-1e-10 max|A|, 0) are clipped to zero, and 0^0 is taken as 0 so that
/// alpha = 0 yields the projector onto the support.
ComplexMatrix mat_pow(const ComplexMatrix& a, double alpha);

/// Same, reusing an existing eigendecomposition.
ComplexMatrix mat_pow(const HermitianEigensystem& eig, double alpha, double scale);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& a);
ComplexMatrix dagger(const ComplexMatrix& a);

/// U diag(values) U^dagger.
ComplexMatrix reconstruct(const ComplexMatrix& vectors, const RealVector& values);

}  // namespace coherence
