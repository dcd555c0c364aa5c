#include "coherence/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coherence/error.hpp"

namespace coherence {

namespace {

void check_alpha(double alpha) {
  if (std::isnan(alpha) || alpha < 0.0) {
    throw Error(ErrorCode::BadAlpha, "alpha must lie in [0, inf], got " + std::to_string(alpha));
  }
}

// log sum exp over the given terms; -inf when empty.
double log_sum_exp(const std::vector<double>& terms) {
  double shift = -kInfinity;
  for (double t : terms) shift = std::max(shift, t);
  if (!std::isfinite(shift)) return shift;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - shift);
  return shift + std::log(sum);
}

void check_gibbs(const QuantumState& rho, const GibbsData& gibbs) {
  if (gibbs.log_weights.size() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "Gibbs data does not match the state's dimension");
  }
}

double classical_difference(const ClassicalSpectrum& a, const ClassicalSpectrum& b, double alpha) {
  return classical_renyi(a.probabilities, a.log_weights, alpha) -
         classical_renyi(b.probabilities, b.log_weights, alpha);
}

WorkResult infimum_of(const std::function<double(double)>& f, bool clip) {
  WorkResult out;
  out.scan = scan_infimum(f);
  out.value = clip ? std::max(0.0, out.scan.infimum) : out.scan.infimum;
  return out;
}

}  // namespace

double classical_renyi(std::span<const double> p, std::span<const double> log_w, double alpha) {
  check_alpha(alpha);
  if (p.size() != log_w.size()) {
    throw Error(ErrorCode::DimensionMismatch, "probability and weight vectors differ in length");
  }
  std::vector<double> terms;
  terms.reserve(p.size());

  if (alpha == 0.0) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > kSupportCutoff) terms.push_back(log_w[i]);
    }
    return -log_sum_exp(terms);
  }
  if (alpha == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= kSupportCutoff) continue;
      if (!std::isfinite(log_w[i])) return kInfinity;
      s += p[i] * (std::log(p[i]) - log_w[i]);
    }
    return s;
  }
  if (alpha == kInfinity) {
    double m = -kInfinity;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= kSupportCutoff) continue;
      if (!std::isfinite(log_w[i])) return kInfinity;
      m = std::max(m, std::log(p[i]) - log_w[i]);
    }
    return m;
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= kSupportCutoff) continue;
    if (!std::isfinite(log_w[i])) {
      if (alpha > 1.0) return kInfinity;
      continue;
    }
    terms.push_back(alpha * std::log(p[i]) + (1.0 - alpha) * log_w[i]);
  }
  // Both arguments are renormalized in log space.
  double p_total = 0.0;
  for (double x : p) p_total += x;
  std::vector<double> finite_w;
  finite_w.reserve(log_w.size());
  for (double lw : log_w) {
    if (std::isfinite(lw)) finite_w.push_back(lw);
  }
  const double log_p_total = std::log(p_total);
  const double log_w_total = log_sum_exp(finite_w);

  // Close to alpha = 1 the plain form divides roundoff by |alpha - 1|; write the sum
  // as 1 + sum p (e^{(alpha-1) r} - 1) with r = log(p / w) and keep the 1 implicit.
  const double t = alpha - 1.0;
  if (std::abs(t) < 0.5) {
    double x = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double pn = p[i] / p_total;
      if (p[i] <= kSupportCutoff || !std::isfinite(log_w[i])) {
        x -= pn;
        continue;
      }
      const double r = (std::log(p[i]) - log_p_total) - (log_w[i] - log_w_total);
      x += pn * std::expm1(t * r);
    }
    if (std::isfinite(x) && x > -1.0) return std::log1p(x) / t;
  }
  const double norm = alpha * log_p_total + (1.0 - alpha) * log_w_total;
  return (log_sum_exp(terms) - norm) / t;
}

RenyiEvaluator::RenyiEvaluator(const ComplexMatrix& rho, const ComplexMatrix& sigma) : rho_(rho) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "divergence arguments differ in dimension");
  }
  rho_eig_ = eigh(rho);
  sigma_eig_ = eigh(sigma);
  rho_scale_ = max_abs(rho);
  sigma_scale_ = max_abs(sigma);
  for (auto* eig : {&rho_eig_, &sigma_eig_}) {
    for (Eigen::Index i = 0; i < eig->eigenvalues.size(); ++i) {
      if (eig->eigenvalues[i] <= kSupportCutoff) eig->eigenvalues[i] = 0.0;
    }
  }
  overlap_ = (rho_eig_.eigenvectors.adjoint() * sigma_eig_.eigenvectors).cwiseAbs2();

  // supp(rho) lies in supp(sigma) iff <s_j|rho|s_j> vanishes on the kernel of sigma.
  for (Eigen::Index j = 0; j < overlap_.cols(); ++j) {
    if (sigma_eig_.eigenvalues[j] > 0.0) continue;
    double weight = 0.0;
    for (Eigen::Index i = 0; i < overlap_.rows(); ++i) weight += rho_eig_.eigenvalues[i] * overlap_(i, j);
    if (weight > kSupportCutoff) support_ok_ = false;
  }
}

double RenyiEvaluator::operator()(double alpha) const {
  check_alpha(alpha);
  if (alpha == 1.0) return relative_entropy();
  if (alpha == kInfinity) return max_relative();
  if (alpha < 1.0) return petz(alpha);
  return sandwiched(alpha);
}

double RenyiEvaluator::petz(double alpha) const {
  const auto& l = rho_eig_.eigenvalues;
  const auto& m = sigma_eig_.eigenvalues;
  double t = 0.0;
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (l[i] <= 0.0) continue;
    const double li = alpha == 0.0 ? 1.0 : std::pow(l[i], alpha);
    for (Eigen::Index j = 0; j < m.size(); ++j) {
      if (m[j] <= 0.0) continue;
      t += li * std::pow(m[j], 1.0 - alpha) * overlap_(i, j);
    }
  }
  if (!(t > 0.0)) return kInfinity;
  return std::log(t) / (alpha - 1.0);
}

namespace {

// sigma^s restricted to its support (pseudo-power for s < 0).
ComplexMatrix support_power(const HermitianEigensystem& eig, double s) {
  RealVector powered(eig.eigenvalues.size());
  for (Eigen::Index j = 0; j < powered.size(); ++j) {
    powered[j] = eig.eigenvalues[j] > 0.0 ? std::pow(eig.eigenvalues[j], s) : 0.0;
  }
  return reconstruct(eig.eigenvectors, powered);
}

}  // namespace

double RenyiEvaluator::sandwiched(double alpha) const {
  if (!support_ok_) return kInfinity;
  const ComplexMatrix s = support_power(sigma_eig_, (1.0 - alpha) / (2.0 * alpha));
  const ComplexMatrix m = s * rho_ * s;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const RealVector& nu = solver.eigenvalues();
  std::vector<double> terms;
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    if (nu[i] > 0.0) terms.push_back(alpha * std::log(nu[i]));
  }
  return log_sum_exp(terms) / (alpha - 1.0);
}

double RenyiEvaluator::relative_entropy() const {
  if (!support_ok_) return kInfinity;
  const auto& l = rho_eig_.eigenvalues;
  const auto& m = sigma_eig_.eigenvalues;
  double s = 0.0;
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (l[i] <= 0.0) continue;
    s += l[i] * std::log(l[i]);
    for (Eigen::Index j = 0; j < m.size(); ++j) {
      if (m[j] > 0.0) s -= l[i] * overlap_(i, j) * std::log(m[j]);
    }
  }
  return s;
}

double RenyiEvaluator::max_relative() const {
  if (!support_ok_) return kInfinity;
  const ComplexMatrix s = support_power(sigma_eig_, -0.5);
  const ComplexMatrix m = s * rho_ * s;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return std::log(solver.eigenvalues().maxCoeff());
}

double renyi_divergence(const ComplexMatrix& rho, const ComplexMatrix& sigma, double alpha) {
  check_alpha(alpha);
  if (alpha == 1.0) throw Error(ErrorCode::BadAlpha, "alpha = 1 is the relative entropy; use kl_divergence");
  return RenyiEvaluator(rho, sigma)(alpha);
}

double kl_divergence(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  return RenyiEvaluator(rho, sigma)(1.0);
}

double max_divergence(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  return RenyiEvaluator(rho, sigma)(kInfinity);
}

double free_energy(const QuantumState& rho, const GibbsData& gibbs, double alpha) {
  check_gibbs(rho, gibbs);
  return RenyiEvaluator(rho.matrix(), gibbs.matrix())(alpha) - gibbs.log_z;
}

ClassicalSpectrum block_spectrum(const ComplexMatrix& block_diagonal, const BlockStructure& blocks,
                                 const GibbsData& gibbs) {
  if (static_cast<std::size_t>(block_diagonal.rows()) != blocks.dim() || gibbs.log_weights.size() != blocks.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix, blocks and Gibbs data differ in dimension");
  }
  ClassicalSpectrum out;
  out.probabilities.reserve(blocks.dim());
  out.log_weights.reserve(blocks.dim());
  for (const auto& block : blocks.blocks) {
    const double lw = gibbs.log_weights[block.members.front()];
    if (block.members.size() == 1) {
      const auto i = static_cast<Eigen::Index>(block.members.front());
      out.probabilities.push_back(block_diagonal(i, i).real());
      out.log_weights.push_back(lw);
      continue;
    }
    const auto g = static_cast<Eigen::Index>(block.members.size());
    ComplexMatrix sub(g, g);
    for (Eigen::Index a = 0; a < g; ++a) {
      for (Eigen::Index b = 0; b < g; ++b) {
        sub(a, b) = block_diagonal(static_cast<Eigen::Index>(block.members[static_cast<std::size_t>(a)]),
                                   static_cast<Eigen::Index>(block.members[static_cast<std::size_t>(b)]));
      }
    }
    const auto eig = eigh(sub);
    for (Eigen::Index a = 0; a < g; ++a) {
      out.probabilities.push_back(eig.eigenvalues[a]);
      out.log_weights.push_back(lw);
    }
  }
  return out;
}

ClassicalSpectrum diagonal_spectrum(const ComplexMatrix& rho, const GibbsData& gibbs) {
  if (static_cast<std::size_t>(rho.rows()) != gibbs.log_weights.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix and Gibbs data differ in dimension");
  }
  ClassicalSpectrum out;
  out.probabilities.resize(gibbs.log_weights.size());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) out.probabilities[static_cast<std::size_t>(i)] = rho(i, i).real();
  out.log_weights = gibbs.log_weights;
  return out;
}

WorkResult w_coh(const QuantumState& rho, const GibbsData& gibbs) {
  check_gibbs(rho, gibbs);
  // Blocks of rho and of D(rho) coincide, so no explicit dephasing is needed.
  const auto blocked = block_spectrum(rho.matrix(), rho.system().blocks(), gibbs);
  const auto diagonal = diagonal_spectrum(rho.matrix(), gibbs);
  return infimum_of([&](double a) { return classical_difference(blocked, diagonal, a); }, true);
}

WorkResult w_coh_general(const QuantumState& rho, const GibbsData& gibbs, const BlockStructure& blocks) {
  check_gibbs(rho, gibbs);
  if (blocks.dim() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "block structure does not match the state's dimension");
  }
  const auto diagonal = diagonal_spectrum(rho.matrix(), gibbs);

  // A partition that refines the energy blocks keeps the pinched state
  // commuting with the Gibbs state.
  const auto& energy = rho.system().blocks();
  bool refines = true;
  for (const auto& block : blocks.blocks) {
    const auto b0 = energy.index_to_block[block.members.front()];
    for (auto idx : block.members) {
      if (energy.index_to_block[idx] != b0) {
        refines = false;
        break;
      }
    }
    if (!refines) break;
  }
  if (refines) {
    const auto pinched = block_spectrum(rho.matrix(), blocks, gibbs);
    return infimum_of([&](double a) { return classical_difference(pinched, diagonal, a); }, true);
  }

  const RenyiEvaluator pinched(dephase_blocks(rho.matrix(), blocks), gibbs.matrix());
  return infimum_of(
      [&](double a) { return pinched(a) - classical_renyi(diagonal.probabilities, diagonal.log_weights, a); },
      true);
}

WorkResult w_incoh(const QuantumState& rho, const GibbsData& gibbs) {
  check_gibbs(rho, gibbs);
  const auto diagonal = diagonal_spectrum(rho.matrix(), gibbs);
  return infimum_of([&](double a) { return classical_renyi(diagonal.probabilities, diagonal.log_weights, a); },
                    true);
}

double w_incoh_closed_form(const QuantumState& rho, const GibbsData& gibbs) {
  check_gibbs(rho, gibbs);
  const auto diagonal = diagonal_spectrum(rho.matrix(), gibbs);
  // F_0(Pi(rho)) + log Z collapses to S_0(Pi(rho) || gamma).
  return classical_renyi(diagonal.probabilities, diagonal.log_weights, 0.0);
}

WorkResult w_tot(const QuantumState& rho, const GibbsData& gibbs) {
  check_gibbs(rho, gibbs);
  const auto blocked = block_spectrum(rho.matrix(), rho.system().blocks(), gibbs);
  return infimum_of([&](double a) { return classical_renyi(blocked.probabilities, blocked.log_weights, a); },
                    true);
}

WorkResult work_distance(const QuantumState& rho, const QuantumState& sigma, const GibbsData& gibbs) {
  check_gibbs(rho, gibbs);
  check_gibbs(sigma, gibbs);
  const auto& blocks = rho.system().blocks();
  if (!is_block_diagonal(rho.matrix(), blocks) || !is_block_diagonal(sigma.matrix(), blocks)) {
    throw Error(ErrorCode::NotBlockDiagonal, "work distance needs energy-block-diagonal arguments");
  }
  const auto a = block_spectrum(rho.matrix(), blocks, gibbs);
  const auto b = block_spectrum(sigma.matrix(), blocks, gibbs);
  return infimum_of([&](double alpha) { return classical_difference(a, b, alpha); }, false);
}

bool is_block_diagonal(const ComplexMatrix& rho, const BlockStructure& blocks, double tol) {
  if (static_cast<std::size_t>(rho.rows()) != blocks.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix dimension does not match block structure");
  }
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      if (blocks.index_to_block[static_cast<std::size_t>(i)] != blocks.index_to_block[static_cast<std::size_t>(j)] &&
          std::abs(rho(i, j)) > tol) {
        return false;
      }
    }
  }
  return true;
}

Observation1Result observation1_criterion(const QuantumState& psi, const GibbsData& gibbs) {
  check_gibbs(psi, gibbs);
  const auto eig = eigh(psi.matrix());
  const auto top = eig.eigenvalues.size() - 1;
  if (eig.eigenvalues[top] < 1.0 - 1e-9) throw Error(ErrorCode::NotPure, "state is not pure");
  const ComplexVector v = eig.eigenvectors.col(top);

  const auto& blocks = psi.system().blocks();
  std::vector<double> score(blocks.size(), -kInfinity);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    double p = 0.0;
    for (auto idx : blocks.blocks[b].members) p += std::norm(v(static_cast<Eigen::Index>(idx)));
    if (p > kSupportCutoff) score[b] = std::log(p) + gibbs.beta * blocks.blocks[b].energy;
  }
  const double best = *std::max_element(score.begin(), score.end());

  Observation1Result out;
  out.extractable = true;
  std::size_t ties = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (std::abs(score[b] - best) > 1e-9) continue;
    if (ties++ == 0) out.energy = blocks.blocks[b].energy;
    const auto& members = blocks.blocks[b].members;
    bool coherent = false;
    for (std::size_t i = 0; i < members.size() && !coherent; ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (std::abs(v(static_cast<Eigen::Index>(members[i]))) * std::abs(v(static_cast<Eigen::Index>(members[j]))) >
            1e-10) {
          coherent = true;
          break;
        }
      }
    }
    out.extractable = out.extractable && coherent;
  }
  out.tie = ties > 1;
  return out;
}

double free_energy_correlation(const QuantumState& rho, double beta, double alpha) {
  const auto& sys = rho.system();
  double c = free_energy(rho, gibbs(sys, beta), alpha);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const auto local = reduced_state(rho, i);
    c -= free_energy(local, gibbs(local.system(), beta), alpha);
  }
  return c;
}

double asymmetry_entropy(const QuantumState& rho, double alpha) {
  return RenyiEvaluator(rho.matrix(), dephase_blocks(rho.matrix(), rho.system().blocks()))(alpha);
}

std::vector<AsymmetryMode> asymmetry_modes(const QuantumState& rho) {
  const auto& blocks = rho.system().blocks();
  const auto& m = rho.matrix();
  std::vector<AsymmetryMode> raw;
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    for (std::size_t b = a; b < blocks.size(); ++b) {
      const auto& lo = blocks.blocks[a];
      const auto& hi = blocks.blocks[b];
      double amp = 0.0;
      for (std::size_t i = 0; i < lo.members.size(); ++i) {
        for (std::size_t j = (a == b ? i + 1 : 0); j < hi.members.size(); ++j) {
          amp += std::abs(m(static_cast<Eigen::Index>(lo.members[i]), static_cast<Eigen::Index>(hi.members[j])));
        }
      }
      raw.push_back({hi.energy - lo.energy, amp});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.omega < y.omega; });

  const double tol = std::max(rho.system().block_tolerance(), 1e-12 * rho.system().operator_norm());
  std::vector<AsymmetryMode> out;
  for (const auto& mode : raw) {
    if (!out.empty() && mode.omega - out.back().omega <= 2.0 * tol) {
      out.back().amplitude += mode.amplitude;
    } else {
      out.push_back(mode);
    }
  }
  return out;
}

}  // namespace coherence
