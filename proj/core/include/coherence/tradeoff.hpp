#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coherence/model.hpp"
#include "coherence/states.hpp"

namespace coherence {

/// Slack below -kBoundTolerance counts as a violation; |slack| <= it as saturation.
inline constexpr double kBoundTolerance = 1e-9;

struct BoundEntry {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;

  double slack() const { return rhs - lhs; }
  bool holds() const { return slack() >= -kBoundTolerance; }
  bool saturated() const { return std::abs(slack()) <= kBoundTolerance; }
};

/// Everything the bounds consume, computed once per state.
struct StateResources {
  double w_coh = 0.0;
  double qfi = 0.0;
  double variance = 0.0;
  double mean_energy = 0.0;
  std::vector<double> block_probabilities;
};

StateResources resources(const QuantumState& rho, const GibbsData& gibbs);

struct TradeoffReport {
  double w_coh = 0.0;
  double qfi = 0.0;
  double delta_e_squared = 0.0;
  std::vector<std::size_t> local_dims;
  std::vector<BoundEntry> bounds;

  const BoundEntry* find(const std::string& name) const;
  bool all_hold() const;
};

/// Binary entropy in bits; H_b(0) = H_b(1) = 0.
double binary_entropy(double r);

/// H_b(y) with y = (1 - sqrt((1 - 2 mean)^2 + 4 var)) / 2 for the distribution
/// p over points x in [0,1]: the series bound on sum_x p_x H_b(x).
double binary_entropy_mixture_bound(std::span<const double> x, std::span<const double> p);

/// log of the central binomial coefficient Gamma(N+1)/Gamma(N/2+1)^2 (any N >= 0).
double log_central_binomial(std::size_t n);
double log_binomial(std::size_t n, std::size_t k);

/// W_coh <= sum_E p_E log g_E.
BoundEntry prop1_bound(const CompositeSystem& system, const StateResources& r);

/// Two-level chain: W_coh <= sum p_E log C(N,n) <= N log2 sum p_E H_b(n/N) <= theorem1_bound rhs.
struct ProofChain {
  double w_coh;
  double prop1;
  double binary_entropy_sum;
  double theorem1;
  bool ordered() const;
};
ProofChain two_level_chain(const CompositeSystem& system, const StateResources& r);

/// W_coh <= N log2 H_b((1 - sqrt(I_F/(N^2 w^2)))/2). Requires N qubits with a
/// common gap (WrongSystemShape) and I_F <= N^2 w^2 (1 + 1e-9) (QfiOutOfRange).
BoundEntry theorem1_bound(const CompositeSystem& system, const StateResources& r);

/// theorem1_bound with log C(N, N/2) replacing N log 2. Throws RangeExceeded
/// for N > 100 unless allow_unverified is set.
BoundEntry tight_binomial_bound(const CompositeSystem& system, const StateResources& r,
                                bool allow_unverified = false);

struct BinomialCheck {
  bool holds = true;
  bool verified_range = true;  // N <= 100
  double worst_slack = 0.0;
};

/// log C(N,n) <= H_b(n/N) log C(N,N/2) for every integer n in [0, N].
BinomialCheck verify_binomial_inequality(std::size_t n);

/// N = 2 only: W_coh + log2 I_F/(4 w^2) <= log 2.
BoundEntry eq4_bound(const CompositeSystem& system, const StateResources& r);

/// W_coh + I_F/(2 Delta_E^2) <= sum log d^(i).
BoundEntry theorem2_bound(const CompositeSystem& system, const StateResources& r);
/// Per-particle form for identical subsystems: W_coh/N + I_F/(2 N^2 Delta_0^2) <= log d.
/// Throws WrongSystemShape when the spectra differ.
BoundEntry per_particle_bound(const CompositeSystem& system, const StateResources& r);

struct HoeffdingCheck {
  struct Row {
    double energy;
    double frequency;
    double bound;
  };
  std::vector<Row> rows;
  bool holds() const;
};

/// f_E = g_E / D <= exp(-2 (E - mu_E)^2 / Delta_E^2) for every block.
HoeffdingCheck hoeffding_frequency_bound(const CompositeSystem& system);

struct EpsilonTradeoff {
  double epsilon = 0.0;
  double w_coh_eps = 0.0;
  double qfi = 0.0;
  double qfi_eps = 0.0;  // QFI against the window-centre Hamiltonian
  double r = 0.0;
  double r_tilde = 0.0;
  BoundEntry with_r;
  BoundEntry with_r_tilde;
  BoundEntry qfi_perturbation;  // |I_F^eps - I_F| <= 4 eps ||H|| + eps^2
  BoundEntry window_work;       // W_coh^eps <= sum_m p_m log g_m
};

/// Trade-off with an epsilon energy-resolution window centred on mu_E.
EpsilonTradeoff epsilon_tradeoff(const QuantumState& rho, const GibbsData& gibbs, double epsilon);

/// All applicable bounds for a state. Bounds that need a qubit shape are
/// skipped on other systems.
TradeoffReport tradeoff_report(const QuantumState& rho, const GibbsData& gibbs);

}  // namespace coherence
