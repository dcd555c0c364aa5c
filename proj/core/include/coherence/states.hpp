#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "coherence/linalg.hpp"
#include "coherence/model.hpp"

namespace coherence {

/// Density matrix on a CompositeSystem.
///
/// Construction checks Hermiticity (1e-12 relative, NonHermitian), unit trace
/// (1e-10) and positivity (min eigenvalue >= -1e-10); the last two throw InvalidState.
class QuantumState {
 public:
  QuantumState(SystemPtr system, ComplexMatrix matrix);

  /// |v><v| for a normalized vector (normalization checked to 1e-12).
  static QuantumState pure(SystemPtr system, const ComplexVector& v);

  const CompositeSystem& system() const { return *system_; }
  const SystemPtr& system_ptr() const { return system_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  struct Unchecked {};
  QuantumState(SystemPtr system, ComplexMatrix matrix, Unchecked);
  friend QuantumState dephase_full(const QuantumState&);
  friend QuantumState dephase_blocks(const QuantumState&);

  SystemPtr system_;
  ComplexMatrix matrix_;
};

/// Pi: keeps only the product-basis diagonal.
QuantumState dephase_full(const QuantumState& rho);
/// D: keeps only entries inside total-energy blocks.
QuantumState dephase_blocks(const QuantumState& rho);

ComplexMatrix dephase_full(const ComplexMatrix& rho);
ComplexMatrix dephase_blocks(const ComplexMatrix& rho, const BlockStructure& blocks);

struct ClassicalEnergyData {
  std::vector<double> index_probabilities;  // P(E) per basis index
  std::vector<double> block_probabilities;  // p_E per block
};

ClassicalEnergyData classical_data(const QuantumState& rho);

/// Partial trace onto subsystem i, bound to a one-subsystem system.
QuantumState reduced_state(const QuantumState& rho, std::size_t i);

namespace states {

/// Dense vectors are limited to 20 qubits, density matrices to 10.
inline constexpr std::size_t kMaxQubits = 10;

QuantumState ghz(std::size_t n, double omega);
QuantumState dicke(std::size_t n, std::size_t k, double omega);
/// Product of single-subsystem coherent Gibbs states sum_i sqrt(e^{-beta E_i}/Z)|E_i>.
QuantumState coherent_gibbs(SystemPtr system, double beta);
QuantumState two_qubit_psi(double p0, double p1, double p2, double omega);
QuantumState tensor_power(const QuantumState& rho, std::size_t n);
QuantumState uniform_superposition(SystemPtr system, std::span<const std::size_t> indices);
QuantumState dense(SystemPtr system, ComplexMatrix matrix);
/// 4x4 example states on H = sum_n n omega |n><n|.
QuantumState supplemental_rho(double omega = 1.0);
QuantumState supplemental_sigma(double omega = 1.0);

ComplexVector ghz_vector(std::size_t n);
ComplexVector dicke_vector(std::size_t n, std::size_t k);

/// Haar-random pure state.
QuantumState random_pure(SystemPtr system, std::mt19937_64& rng);
/// Random mixed state of the given rank (0 means full rank), induced measure.
QuantumState random_mixed(SystemPtr system, std::mt19937_64& rng, std::size_t rank = 0);

}  // namespace states

}  // namespace coherence
