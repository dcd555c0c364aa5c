#pragma once

#include <span>
#include <vector>

#include "coherence/alpha_scan.hpp"
#include "coherence/linalg.hpp"
#include "coherence/model.hpp"
#include "coherence/states.hpp"

namespace coherence {

/// Probabilities at or below this are treated as exact zeros.
inline constexpr double kSupportCutoff = 1e-12;

// ---------------------------------------------------------------------------
// Divergences
// ---------------------------------------------------------------------------

/// Classical Renyi divergence of p from weights exp(log_w). alpha = 0, 1 and
/// kInfinity use the limiting formulas. Entries of p below kSupportCutoff are
/// dropped (0 log 0 = 0).
double classical_renyi(std::span<const double> p, std::span<const double> log_w, double alpha);

/// Petz form for alpha in [0,1), sandwiched form for alpha > 1, max-divergence
/// for alpha = kInfinity. Returns +inf when alpha > 1 and supp(rho) is not
/// contained in supp(sigma). alpha = 1 is rejected with BadAlpha.
double renyi_divergence(const ComplexMatrix& rho, const ComplexMatrix& sigma, double alpha);
double kl_divergence(const ComplexMatrix& rho, const ComplexMatrix& sigma);
double max_divergence(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Caches both eigendecompositions for repeated evaluation over alpha.
/// Accepts every alpha in [0, inf], dispatching alpha = 1 to the relative entropy.
class RenyiEvaluator {
 public:
  RenyiEvaluator(const ComplexMatrix& rho, const ComplexMatrix& sigma);

  double operator()(double alpha) const;
  bool support_contained() const { return support_ok_; }

 private:
  double petz(double alpha) const;
  double sandwiched(double alpha) const;
  double relative_entropy() const;
  double max_relative() const;

  ComplexMatrix rho_;
  HermitianEigensystem rho_eig_;
  HermitianEigensystem sigma_eig_;
  double rho_scale_ = 0.0;
  double sigma_scale_ = 0.0;
  Eigen::MatrixXd overlap_;  // |<r_i|s_j>|^2
  bool support_ok_ = true;
};

/// Generalized free energy beta F_alpha = S_alpha(rho || gamma) - log Z (k_B T = 1).
/// Every alpha in [0, inf] is accepted.
double free_energy(const QuantumState& rho, const GibbsData& gibbs, double alpha);

// ---------------------------------------------------------------------------
// Work quantities (units of k_B T)
// ---------------------------------------------------------------------------

struct WorkResult {
  double value = 0.0;
  AlphaScan scan;
};

/// Eigenvalues of a block-diagonal matrix grouped per block, paired with the
/// block's Gibbs log-weight. Exact for states commuting with the Gibbs state.
struct ClassicalSpectrum {
  std::vector<double> probabilities;
  std::vector<double> log_weights;
};

ClassicalSpectrum block_spectrum(const ComplexMatrix& block_diagonal, const BlockStructure& blocks,
                                 const GibbsData& gibbs);
ClassicalSpectrum diagonal_spectrum(const ComplexMatrix& rho, const GibbsData& gibbs);

/// W_coh = inf_alpha [F_alpha(D(rho)) - F_alpha(Pi(rho))] via the commuting
/// fast path on per-block eigenvalues. Clipped at zero; the raw infimum stays in scan.
WorkResult w_coh(const QuantumState& rho, const GibbsData& gibbs);

/// Same quantity with an arbitrary block partition standing in for the energy
/// blocks (e.g. epsilon windows). The pinched state need not commute with the
/// Gibbs state, so full quantum divergences are used.
WorkResult w_coh_general(const QuantumState& rho, const GibbsData& gibbs,
                         const BlockStructure& blocks);

/// W_incoh = inf_alpha [F_alpha(Pi(rho)) - F_alpha(gamma)].
WorkResult w_incoh(const QuantumState& rho, const GibbsData& gibbs);
/// F_0(Pi(rho)) + log Z.
double w_incoh_closed_form(const QuantumState& rho, const GibbsData& gibbs);
/// W_tot = D_work(D(rho) > gamma).
WorkResult w_tot(const QuantumState& rho, const GibbsData& gibbs);
/// D_work(rho > sigma) = inf_alpha [F_alpha(rho) - F_alpha(sigma)] for
/// block-diagonal arguments; throws NotBlockDiagonal otherwise.
WorkResult work_distance(const QuantumState& rho, const QuantumState& sigma, const GibbsData& gibbs);

bool is_block_diagonal(const ComplexMatrix& rho, const BlockStructure& blocks, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Pure-state criterion
// ---------------------------------------------------------------------------

struct Observation1Result {
  bool extractable = false;
  double energy = 0.0;  // the maximizing block energy (lowest one on ties)
  bool tie = false;     // several blocks share the maximal p_E e^{beta E}
};

/// Work is extractable from the internal coherence of a pure state iff the
/// block maximizing p_E e^{beta E} carries internal coherence. On ties every
/// maximizing block must be coherent. Throws NotPure.
Observation1Result observation1_criterion(const QuantumState& psi, const GibbsData& gibbs);

// ---------------------------------------------------------------------------
// Correlations and asymmetry
// ---------------------------------------------------------------------------

/// C_alpha = beta [F_alpha(rho) - sum_i F_alpha(rho_i)], with local Gibbs states
/// at the same beta.
double free_energy_correlation(const QuantumState& rho, double beta, double alpha);

/// A_alpha = S_alpha(rho || D(rho)); every alpha in [0, inf] is accepted.
double asymmetry_entropy(const QuantumState& rho, double alpha);

struct AsymmetryMode {
  double omega;
  double amplitude;
};

/// sum of |rho_{EE'}| over pairs with E_E - E_E' = omega >= 0 (each unordered
/// pair counted once), sorted by omega.
std::vector<AsymmetryMode> asymmetry_modes(const QuantumState& rho);

}  // namespace coherence
