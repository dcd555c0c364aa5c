#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coherence/linalg.hpp"
#include "coherence/model.hpp"
#include "coherence/states.hpp"

namespace coherence {

/// Quantum Fisher information 2 sum_ij (l_i - l_j)^2/(l_i + l_j) |<i|H|j>|^2.
/// Pairs with l_i + l_j <= 1e-14 are skipped. Throws DimensionMismatch.
double qfi(const ComplexMatrix& rho, const ComplexMatrix& h);
double qfi(const QuantumState& rho);

/// Wigner-Yanase-Dyson skew information Tr(rho H^2) - Tr(rho^a H rho^{1-a} H),
/// a in (0,1); BadAlpha otherwise.
double skew_information(const ComplexMatrix& rho, const ComplexMatrix& h, double alpha);
double skew_information(const QuantumState& rho, double alpha);

double variance(const ComplexMatrix& rho, const ComplexMatrix& h);
double variance(const QuantumState& rho);

/// QFI of a pure state with the given energy distribution (4 times its variance),
/// without building any matrix.
double pure_distribution_qfi(std::span<const double> energies, std::span<const double> probabilities);

struct ClockReport {
  double qfi = 0.0;
  std::map<double, double> skew;  // alpha -> I_alpha
  double variance = 0.0;
};

/// An empty alpha list means {1/2}.
ClockReport clock_report(const QuantumState& rho, std::span<const double> skew_alphas = {});

/// (QFI of the coherent Gibbs state, 4 d^2/dbeta^2 log Z by central differences
/// with step 1e-4 beta).
std::pair<double, double> coherent_gibbs_qfi_identity(const SystemPtr& system, double beta);

/// Time-translation-covariant, Gibbs-preserving maps.
class CovariantChannel {
 public:
  enum class Kind { BlockDephase, PartialDephase, GibbsMix };

  static CovariantChannel block_dephase();
  /// rho -> (1 - lambda) rho + lambda D(rho).
  static CovariantChannel partial_dephase(double lambda);
  /// rho -> (1 - p) rho + p gamma.
  static CovariantChannel gibbs_mix(double p, GibbsData gibbs);

  QuantumState apply(const QuantumState& rho) const;
  Kind kind() const { return kind_; }
  double parameter() const { return parameter_; }
  std::string name() const;

 private:
  CovariantChannel(Kind kind, double parameter) : kind_(kind), parameter_(parameter) {}

  Kind kind_;
  double parameter_;
  GibbsData gibbs_;
};

struct MonotoneChange {
  std::string name;
  double before;
  double after;
  double delta() const { return after - before; }
};

/// Change of every monotone under a candidate transition rho -> sigma.
/// A monotone that increases by more than 1e-9 forbids the transition.
struct AuditReport {
  MonotoneChange qfi;
  std::vector<MonotoneChange> skew;                    // alpha in {1/4, 1/2, 3/4}
  std::vector<MonotoneChange> free_energies;           // one per grid alpha and 0, 1, inf
  std::vector<MonotoneChange> asymmetries;             // same alphas
  std::vector<MonotoneChange> modes;                   // per omega > 0

  std::vector<std::string> forbidding() const;
  bool free_energies_non_increasing() const;
  bool asymmetries_non_increasing() const;
  bool modes_non_increasing() const;
};

AuditReport monotonicity_audit(const QuantumState& rho, const QuantumState& sigma, const GibbsData& gibbs);

/// True ("not k-producible") iff I_F > k N omega^2 + 1e-9 on N qubits of gap omega.
/// Throws WrongSystemShape on other systems.
bool producibility_witness(const QuantumState& rho, std::size_t k);

}  // namespace coherence
