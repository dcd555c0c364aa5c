#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "coherence/linalg.hpp"
#include "coherence/model.hpp"
#include "coherence/states.hpp"
#include "coherence/tradeoff.hpp"

namespace coherence::ising {

/// H = -h sum_i sz_i - J sum_i sx_i sx_{i+1}, periodic.
struct IsingChain {
  std::size_t n = 2;
  double h = 1.0;
  double j = 0.0;

  /// Throws BadParams unless n is even and >= 2, h >= 0, J >= 0.
  void validate() const;
};

/// E_k = 2 sqrt(h^2 + J^2 - 2 h J cos k).
double dispersion(double h, double j, double k);

/// Neveu-Schwarz (even fermion parity, half-integer momenta) or Ramond
/// (odd parity, integer momenta).
enum class Sector { NS, R };

struct Level {
  double energy;
  std::uint32_t occupation;  // bit n set <=> mode n (momentum index n - N/2) occupied
};

struct SectorSpectrum {
  Sector sector = Sector::NS;
  std::vector<double> momenta;
  /// Single-mode energies; in R the p = 0 entry is the signed 2(h - J).
  std::vector<double> mode_energies;
  std::vector<Level> levels;  // ascending
};

inline constexpr std::size_t kMaxFermionSites = 24;
inline constexpr std::size_t kMaxEdSites = 12;

/// Many-body levels sum_occ e_n - (1/2) sum_all e_n over patterns of the
/// sector's parity. `max_levels` = 0 keeps every level. Throws TooLarge for N > 24.
SectorSpectrum sector_spectrum(const IsingChain& chain, Sector sector, std::size_t max_levels = 0);

/// NS and R levels merged, ascending.
std::vector<double> full_spectrum(const IsingChain& chain);

/// Spin-basis Hamiltonian (dim 2^N, |0> = sz eigenvalue -1). TooLarge for N > 12.
Eigen::MatrixXd spin_hamiltonian(const IsingChain& chain);
/// -h sum_i sz_i only.
Eigen::MatrixXd field_hamiltonian(const IsingChain& chain);

/// Sorted eigenvalues of the explicit 2^N x 2^N Hamiltonian.
std::vector<double> ed_oracle(const IsingChain& chain);

/// Level counts per epsilon window (window label -> count), windows centred on mu.
std::map<long, std::size_t> degeneracy_histogram(const IsingChain& chain, double epsilon,
                                                 double mu = 0.0);

/// Quasiparticle registers {-E_k/2, +E_k/2} over the NS momenta.
SystemPtr effective_register_system(const IsingChain& chain);

/// W_coh + I_F/(8 N (h^2 + J^2)) <= N log 2 on the quasiparticle registers.
/// Throws WrongSystemShape when rho is not on effective_register_system(chain).
BoundEntry ising_tradeoff(const QuantumState& rho_effective, const GibbsData& gibbs,
                          const IsingChain& chain);

struct QfiSandwich {
  double lower;
  double value;
  double upper;
  bool holds() const { return lower <= value + 1e-9 && value <= upper + 1e-9; }
};

/// I_F(rho, H0) - 8hJN^2 <= I_F(rho, H_Ising) <= I_F(rho, H0) + 8hJN^2 + 4J^2N^2
/// for a spin-basis density matrix of dimension 2^N (N <= 10).
QfiSandwich ising_qfi_bounds(const ComplexMatrix& rho, const IsingChain& chain);

}  // namespace coherence::ising
