#include "coherence/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "coherence/clock.hpp"
#include "coherence/divergence.hpp"
#include "coherence/error.hpp"

namespace coherence {

namespace {

constexpr double kLn2 = std::numbers::ln2;

struct QubitShape {
  std::size_t n;
  double omega;
};

QubitShape require_qubits(const CompositeSystem& system) {
  const auto gap = system.uniform_qubit_gap();
  if (!gap) throw Error(ErrorCode::WrongSystemShape, "bound needs two-level subsystems with a common gap");
  return {system.size(), *gap};
}

// Excitation number of each block of an N-qubit system.
std::vector<std::size_t> excitations(const CompositeSystem& system, double omega) {
  double ground = 0.0;
  for (const auto& s : system.local_spectra()) ground += s.front();
  std::vector<std::size_t> out;
  for (const auto& b : system.blocks().blocks) {
    out.push_back(static_cast<std::size_t>(std::lround((b.energy - ground) / omega)));
  }
  return out;
}

// H_b((1 - sqrt(I_F / (N^2 w^2))) / 2) after the range check.
double theorem1_entropy(const QubitShape& shape, double qfi_value) {
  const double n = static_cast<double>(shape.n);
  const double ratio = qfi_value / (n * n * shape.omega * shape.omega);
  if (ratio > 1.0 + 1e-9) {
    throw Error(ErrorCode::QfiOutOfRange, "I_F / (N^2 w^2) = " + std::to_string(ratio) + " exceeds 1");
  }
  return binary_entropy(0.5 * (1.0 - std::sqrt(std::clamp(ratio, 0.0, 1.0))));
}

}  // namespace

StateResources resources(const QuantumState& rho, const GibbsData& gibbs) {
  StateResources r;
  const ComplexMatrix h = rho.system().hamiltonian();
  r.w_coh = w_coh(rho, gibbs).value;
  r.qfi = qfi(rho.matrix(), h);
  r.variance = variance(rho.matrix(), h);
  r.mean_energy = (rho.matrix() * h).trace().real();
  r.block_probabilities = classical_data(rho).block_probabilities;
  return r;
}

const BoundEntry* TradeoffReport::find(const std::string& name) const {
  for (const auto& b : bounds) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

bool TradeoffReport::all_hold() const {
  return std::all_of(bounds.begin(), bounds.end(), [](const BoundEntry& b) { return b.holds(); });
}

double binary_entropy(double r) {
  if (!(r > 0.0 && r < 1.0)) return 0.0;
  return -r * std::log2(r) - (1.0 - r) * std::log2(1.0 - r);
}

double binary_entropy_mixture_bound(std::span<const double> x, std::span<const double> p) {
  if (x.size() != p.size()) throw Error(ErrorCode::DimensionMismatch, "points and weights differ in length");
  double mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mean += p[i] * x[i];
  double var = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) var += p[i] * (x[i] - mean) * (x[i] - mean);
  const double disc = (1.0 - 2.0 * mean) * (1.0 - 2.0 * mean) + 4.0 * var;
  return binary_entropy(0.5 * (1.0 - std::sqrt(std::clamp(disc, 0.0, 1.0))));
}

double log_central_binomial(std::size_t n) {
  const double nn = static_cast<double>(n);
  return std::lgamma(nn + 1.0) - 2.0 * std::lgamma(nn / 2.0 + 1.0);
}

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) throw Error(ErrorCode::BadParams, "binomial k exceeds n");
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

BoundEntry prop1_bound(const CompositeSystem& system, const StateResources& r) {
  const auto& blocks = system.blocks();
  double rhs = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    rhs += r.block_probabilities[b] * std::log(static_cast<double>(blocks.blocks[b].degeneracy()));
  }
  return {"prop1", r.w_coh, rhs};
}

bool ProofChain::ordered() const {
  return w_coh <= prop1 + kBoundTolerance && prop1 <= binary_entropy_sum + kBoundTolerance &&
         binary_entropy_sum <= theorem1 + kBoundTolerance;
}

ProofChain two_level_chain(const CompositeSystem& system, const StateResources& r) {
  const auto shape = require_qubits(system);
  const auto ns = excitations(system, shape.omega);
  const double n = static_cast<double>(shape.n);
  ProofChain chain{};
  chain.w_coh = r.w_coh;
  for (std::size_t b = 0; b < ns.size(); ++b) {
    const double p = r.block_probabilities[b];
    chain.prop1 += p * log_binomial(shape.n, ns[b]);
    chain.binary_entropy_sum += p * binary_entropy(static_cast<double>(ns[b]) / n);
  }
  chain.binary_entropy_sum *= n * kLn2;
  chain.theorem1 = n * kLn2 * theorem1_entropy(shape, r.qfi);
  return chain;
}

BoundEntry theorem1_bound(const CompositeSystem& system, const StateResources& r) {
  const auto shape = require_qubits(system);
  return {"theorem1", r.w_coh, static_cast<double>(shape.n) * kLn2 * theorem1_entropy(shape, r.qfi)};
}

BoundEntry tight_binomial_bound(const CompositeSystem& system, const StateResources& r, bool allow_unverified) {
  const auto shape = require_qubits(system);
  if (shape.n > 100 && !allow_unverified) {
    throw Error(ErrorCode::RangeExceeded, "binomial inequality only verified for N <= 100");
  }
  return {"tight_binomial", r.w_coh, log_central_binomial(shape.n) * theorem1_entropy(shape, r.qfi)};
}

BinomialCheck verify_binomial_inequality(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::BadParams, "N must be at least 1");
  BinomialCheck check;
  check.verified_range = n <= 100;
  check.worst_slack = kInfinity;
  const double central = log_central_binomial(n);
  for (std::size_t k = 0; k <= n; ++k) {
    const double lhs = log_binomial(n, k);
    const double rhs = binary_entropy(static_cast<double>(k) / static_cast<double>(n)) * central;
    const double slack = rhs - lhs;
    check.worst_slack = std::min(check.worst_slack, slack);
    // Equality at k = N/2 leaves only rounding in the slack.
    if (slack < -1e-12 * (1.0 + std::abs(lhs))) check.holds = false;
  }
  return check;
}

BoundEntry eq4_bound(const CompositeSystem& system, const StateResources& r) {
  const auto shape = require_qubits(system);
  if (shape.n != 2) throw Error(ErrorCode::WrongSystemShape, "this bound is for exactly two qubits");
  return {"eq4", r.w_coh + kLn2 * r.qfi / (4.0 * shape.omega * shape.omega), kLn2};
}

BoundEntry theorem2_bound(const CompositeSystem& system, const StateResources& r) {
  const double spread = system.spread_squared();
  const double clock = spread > 0.0 ? r.qfi / (2.0 * spread) : 0.0;
  return {"theorem2", r.w_coh + clock, system.log_dim()};
}

BoundEntry per_particle_bound(const CompositeSystem& system, const StateResources& r) {
  if (!system.identical_subsystems()) {
    throw Error(ErrorCode::WrongSystemShape, "per-particle form needs identical subsystems");
  }
  const double n = static_cast<double>(system.size());
  const double spread0 = system.spread_squared() / n;
  const double clock = spread0 > 0.0 ? r.qfi / (2.0 * n * n * spread0) : 0.0;
  return {"per_particle", r.w_coh / n + clock, system.log_dim() / n};
}

bool HoeffdingCheck::holds() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const Row& row) { return row.frequency <= row.bound * (1.0 + 1e-12) + 1e-15; });
}

HoeffdingCheck hoeffding_frequency_bound(const CompositeSystem& system) {
  const double mu = system.mean_energy();
  const double spread = system.spread_squared();
  const double d = static_cast<double>(system.dim());
  HoeffdingCheck check;
  for (const auto& b : system.blocks().blocks) {
    const double dev = b.energy - mu;
    const double bound = spread > 0.0 ? std::exp(-2.0 * dev * dev / spread) : 1.0;
    check.rows.push_back({b.energy, static_cast<double>(b.degeneracy()) / d, bound});
  }
  return check;
}

EpsilonTradeoff epsilon_tradeoff(const QuantumState& rho, const GibbsData& gibbs, double epsilon) {
  const auto& system = rho.system();
  const auto& blocks = system.blocks();
  const auto data = classical_data(rho);
  const auto windows = energy_windows(blocks, epsilon, system.mean_energy(), data.block_probabilities);

  EpsilonTradeoff out;
  out.epsilon = epsilon;
  out.w_coh_eps = w_coh_general(rho, gibbs, windows.as_blocks(blocks)).value;

  const ComplexMatrix h = system.hamiltonian();
  ComplexMatrix h_eps = ComplexMatrix::Zero(h.rows(), h.cols());
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const auto w = windows.block_to_window[blocks.index_to_block[i]];
    h_eps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = windows.windows[w].center;
  }
  out.qfi = qfi(rho.matrix(), h);
  out.qfi_eps = qfi(rho.matrix(), h_eps);

  double abs_m = 0.0;
  double p0 = 0.0;
  double window_rhs = 0.0;
  for (const auto& w : windows.windows) {
    abs_m += w.population * static_cast<double>(std::labs(w.m));
    if (w.m == 0) p0 = w.population;
    if (w.population > 0.0) window_rhs += w.population * std::log(static_cast<double>(w.degeneracy));
  }
  const double spread = system.spread_squared();
  const double norm = system.operator_norm();
  const double eps2 = epsilon * epsilon;
  if (spread > 0.0) {
    out.r = (2.0 * epsilon * abs_m - eps2 * p0) / spread;
    out.r_tilde = (2.0 * epsilon * (abs_m + norm) + eps2 * (0.5 - p0)) / spread;
  }
  const double clock = spread > 0.0 ? out.qfi / (2.0 * spread) : 0.0;
  const double clock_eps = spread > 0.0 ? out.qfi_eps / (2.0 * spread) : 0.0;
  out.with_r = {"epsilon_r", out.w_coh_eps + clock, system.log_dim() + out.r};
  out.with_r_tilde = {"epsilon_r_tilde", out.w_coh_eps + clock_eps, system.log_dim() + out.r_tilde};
  out.qfi_perturbation = {"qfi_perturbation", std::abs(out.qfi_eps - out.qfi), 4.0 * epsilon * norm + eps2};
  out.window_work = {"window_work", out.w_coh_eps, window_rhs};
  return out;
}

TradeoffReport tradeoff_report(const QuantumState& rho, const GibbsData& gibbs) {
  const auto& system = rho.system();
  const auto r = resources(rho, gibbs);
  TradeoffReport report;
  report.w_coh = r.w_coh;
  report.qfi = r.qfi;
  report.delta_e_squared = system.spread_squared();
  for (std::size_t i = 0; i < system.size(); ++i) report.local_dims.push_back(system.local_dim(i));

  report.bounds.push_back(prop1_bound(system, r));
  report.bounds.push_back(theorem2_bound(system, r));
  if (system.identical_subsystems()) report.bounds.push_back(per_particle_bound(system, r));
  if (system.uniform_qubit_gap()) {
    report.bounds.push_back(theorem1_bound(system, r));
    if (system.size() <= 100) report.bounds.push_back(tight_binomial_bound(system, r));
    if (system.size() == 2) report.bounds.push_back(eq4_bound(system, r));
  }
  return report;
}

}  // namespace coherence
