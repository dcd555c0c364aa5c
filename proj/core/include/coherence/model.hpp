#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "coherence/linalg.hpp"

namespace coherence {

/// Product-basis indices sharing one total energy.
struct EnergyBlock {
  double energy = 0.0;
  std::vector<std::size_t> members;

  std::size_t degeneracy() const { return members.size(); }
};

/// Partition of {0, ..., D-1} into total-energy classes, sorted by energy.
struct BlockStructure {
  std::vector<EnergyBlock> blocks;
  std::vector<std::size_t> index_to_block;

  std::size_t dim() const { return index_to_block.size(); }
  std::size_t size() const { return blocks.size(); }
};

/// Groups energies whose sorted neighbours lie within `tolerance`.
/// Throws AmbiguousBlocking when some pair of energies differs by an amount
/// in (tolerance, 10 tolerance), or when chaining makes a block wider than
/// `tolerance`.
BlockStructure build_blocks(std::span<const double> energies, double tolerance);

/// Noninteracting composite system H = sum_i H_i with diagonal local Hamiltonians.
///
/// The product basis is lexicographic in the local indices with subsystem 0
/// varying slowest. Total energies and the block structure are computed once
/// at construction.
class CompositeSystem {
 public:
  static constexpr std::size_t kMaxDim = std::size_t{1} << 20;

  /// `block_tolerance` defaults to 1e-9 * max|E| over all local energies.
  explicit CompositeSystem(std::vector<std::vector<double>> local_spectra,
                           std::optional<double> block_tolerance = std::nullopt);

  /// N two-level systems with spectrum {0, omega}.
  static CompositeSystem qubits(std::size_t n, double omega);

  std::size_t size() const { return spectra_.size(); }
  std::size_t dim() const { return dim_; }
  std::size_t local_dim(std::size_t i) const { return spectra_.at(i).size(); }
  const std::vector<double>& local_spectrum(std::size_t i) const { return spectra_.at(i); }
  const std::vector<std::vector<double>>& local_spectra() const { return spectra_; }
  double block_tolerance() const { return tolerance_; }

  const std::vector<double>& total_energies() const { return energies_; }
  const BlockStructure& blocks() const { return blocks_; }

  std::vector<std::size_t> local_indices(std::size_t index) const;
  std::size_t index_of(std::span<const std::size_t> local) const;

  /// mu_E: sum over subsystems of the uniform average of the local spectrum.
  double mean_energy() const;
  /// Delta_E^2 = sum_i (E_max^(i) - E_min^(i))^2.
  double spread_squared() const;
  /// Operator norm of H, i.e. max |total energy|.
  double operator_norm() const;
  /// sum_i log d^(i).
  double log_dim() const;

  bool identical_subsystems() const;
  /// Common gap omega when every subsystem is two-level with the same gap.
  std::optional<double> uniform_qubit_gap() const;

  /// Diagonal total Hamiltonian in the product basis.
  ComplexMatrix hamiltonian() const;

 private:
  std::vector<std::vector<double>> spectra_;
  double tolerance_ = 0.0;
  std::size_t dim_ = 1;
  std::vector<std::size_t> strides_;
  std::vector<double> energies_;
  BlockStructure blocks_;
};

using SystemPtr = std::shared_ptr<const CompositeSystem>;

SystemPtr make_system(std::vector<std::vector<double>> local_spectra,
                      std::optional<double> block_tolerance = std::nullopt);
SystemPtr make_qubits(std::size_t n, double omega);

/// Thermal data at inverse temperature beta, in units with k_B T = 1/beta.
struct GibbsData {
  double beta = 1.0;
  double log_z = 0.0;
  /// Per basis index: -beta * E_block - log Z.
  std::vector<double> log_weights;
  std::vector<double> weights;

  double z() const;
  ComplexMatrix matrix() const;
};

/// Weights use each index's block energy, so they are exactly block-constant.
GibbsData gibbs(const CompositeSystem& system, double beta);

/// Window label m for an energy under the half-open-toward-zero convention:
/// [mu+(m-1/2)eps, mu+(m+1/2)eps) for m > 0, the mirror image for m < 0 and
/// the open interval around mu for m = 0.
long window_index(double energy, double mu, double epsilon);

struct EnergyWindow {
  long m = 0;
  double center = 0.0;
  std::vector<std::size_t> blocks;
  double population = 0.0;
  std::size_t degeneracy = 0;
  double frequency = 0.0;
};

struct EnergyWindows {
  double epsilon = 0.0;
  double mu = 0.0;
  std::vector<EnergyWindow> windows;  // sorted by m
  std::vector<std::size_t> block_to_window;

  /// Windows as merged blocks over the product basis.
  BlockStructure as_blocks(const BlockStructure& blocks) const;
};

/// `block_populations` (p_E per block) may be empty, in which case the
/// window populations are left at zero.
EnergyWindows energy_windows(const BlockStructure& blocks, double epsilon, double mu,
                             std::span<const double> block_populations = {});

}  // namespace coherence
