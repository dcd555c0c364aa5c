#include "coherence/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "coherence/error.hpp"

namespace coherence {

BlockStructure build_blocks(std::span<const double> energies, double tolerance) {
  if (!(tolerance >= 0.0)) {
    throw Error(ErrorCode::BadParams, "block tolerance must be >= 0");
  }
  const std::size_t dim = energies.size();
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });

  BlockStructure out;
  out.index_to_block.assign(dim, 0);
  auto ambiguous = [&](double a, double b) {
    throw Error(ErrorCode::AmbiguousBlocking,
                "energies " + std::to_string(a) + " and " + std::to_string(b) +
                    " are neither degenerate nor separated at tolerance " + std::to_string(tolerance));
  };

  std::size_t start = 0;
  while (start < dim) {
    std::size_t stop = start + 1;
    while (stop < dim && energies[order[stop]] - energies[order[stop - 1]] <= tolerance) ++stop;
    const double lo = energies[order[start]];
    const double hi = energies[order[stop - 1]];
    if (hi - lo > tolerance) ambiguous(lo, hi);
    if (stop < dim && tolerance > 0.0) {
      const double gap = energies[order[stop]] - hi;
      if (gap < 10.0 * tolerance) ambiguous(hi, energies[order[stop]]);
    }

    EnergyBlock block;
    block.members.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(stop));
    std::sort(block.members.begin(), block.members.end());
    double sum = 0.0;
    for (auto idx : block.members) sum += energies[idx];
    block.energy = sum / static_cast<double>(block.members.size());
    for (auto idx : block.members) out.index_to_block[idx] = out.blocks.size();
    out.blocks.push_back(std::move(block));
    start = stop;
  }
  return out;
}

CompositeSystem::CompositeSystem(std::vector<std::vector<double>> local_spectra,
                                 std::optional<double> block_tolerance)
    : spectra_(std::move(local_spectra)) {
  if (spectra_.empty()) {
    throw Error(ErrorCode::BadParams, "a system needs at least one subsystem");
  }
  double max_energy = 0.0;
  for (std::size_t i = 0; i < spectra_.size(); ++i) {
    const auto& s = spectra_[i];
    if (s.empty()) {
      throw Error(ErrorCode::BadParams, "local spectrum " + std::to_string(i) + " is empty");
    }
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!std::isfinite(s[j])) {
        throw Error(ErrorCode::BadParams, "non-finite energy in spectrum " + std::to_string(i));
      }
      if (j > 0 && s[j] < s[j - 1]) {
        throw Error(ErrorCode::BadParams,
                    "local spectrum " + std::to_string(i) + " is not sorted ascending");
      }
      max_energy = std::max(max_energy, std::abs(s[j]));
    }
    if (s.size() > kMaxDim / dim_) {
      throw Error(ErrorCode::TooLarge, "total dimension exceeds 2^20");
    }
    dim_ *= s.size();
  }

  tolerance_ = block_tolerance.value_or(1e-9 * max_energy);
  if (!(tolerance_ >= 0.0)) {
    throw Error(ErrorCode::BadParams, "block tolerance must be >= 0");
  }

  strides_.assign(spectra_.size(), 1);
  for (std::size_t i = spectra_.size() - 1; i > 0; --i) {
    strides_[i - 1] = strides_[i] * spectra_[i].size();
  }

  energies_.reserve(dim_);
  energies_.push_back(0.0);
  for (const auto& s : spectra_) {
    std::vector<double> next;
    next.reserve(energies_.size() * s.size());
    for (double e : energies_) {
      for (double local : s) next.push_back(e + local);
    }
    energies_ = std::move(next);
  }

  blocks_ = build_blocks(energies_, tolerance_);
}

CompositeSystem CompositeSystem::qubits(std::size_t n, double omega) {
  if (n == 0) throw Error(ErrorCode::BadParams, "need at least one qubit");
  if (!(omega > 0.0)) throw Error(ErrorCode::BadParams, "qubit gap must be positive");
  return CompositeSystem(std::vector<std::vector<double>>(n, {0.0, omega}));
}

std::vector<std::size_t> CompositeSystem::local_indices(std::size_t index) const {
  std::vector<std::size_t> out(spectra_.size());
  for (std::size_t i = 0; i < spectra_.size(); ++i) {
    out[i] = (index / strides_[i]) % spectra_[i].size();
  }
  return out;
}

std::size_t CompositeSystem::index_of(std::span<const std::size_t> local) const {
  if (local.size() != spectra_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "local index count does not match subsystem count");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (local[i] >= spectra_[i].size()) {
      throw Error(ErrorCode::BadParams, "local index out of range");
    }
    index += local[i] * strides_[i];
  }
  return index;
}

double CompositeSystem::mean_energy() const {
  double mu = 0.0;
  for (const auto& s : spectra_) {
    mu += std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  }
  return mu;
}

double CompositeSystem::spread_squared() const {
  double total = 0.0;
  for (const auto& s : spectra_) {
    const double d = s.back() - s.front();
    total += d * d;
  }
  return total;
}

double CompositeSystem::operator_norm() const {
  double norm = 0.0;
  for (double e : energies_) norm = std::max(norm, std::abs(e));
  return norm;
}

double CompositeSystem::log_dim() const {
  double total = 0.0;
  for (const auto& s : spectra_) total += std::log(static_cast<double>(s.size()));
  return total;
}

bool CompositeSystem::identical_subsystems() const {
  for (const auto& s : spectra_) {
    if (s.size() != spectra_.front().size()) return false;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (std::abs(s[j] - spectra_.front()[j]) > tolerance_) return false;
    }
  }
  return true;
}

std::optional<double> CompositeSystem::uniform_qubit_gap() const {
  const double gap = spectra_.front().size() == 2 ? spectra_.front()[1] - spectra_.front()[0] : 0.0;
  if (!(gap > 0.0)) return std::nullopt;
  const double tol = std::max(tolerance_, 1e-12 * gap);
  for (const auto& s : spectra_) {
    if (s.size() != 2 || std::abs((s[1] - s[0]) - gap) > tol) return std::nullopt;
  }
  return gap;
}

ComplexMatrix CompositeSystem::hamiltonian() const {
  ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < dim_; ++i) h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = energies_[i];
  return h;
}

SystemPtr make_system(std::vector<std::vector<double>> local_spectra, std::optional<double> block_tolerance) {
  return std::make_shared<const CompositeSystem>(std::move(local_spectra), block_tolerance);
}

SystemPtr make_qubits(std::size_t n, double omega) {
  return std::make_shared<const CompositeSystem>(CompositeSystem::qubits(n, omega));
}

double GibbsData::z() const { return std::exp(log_z); }

ComplexMatrix GibbsData::matrix() const {
  const auto n = static_cast<Eigen::Index>(weights.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = weights[static_cast<std::size_t>(i)];
  return m;
}

GibbsData gibbs(const CompositeSystem& system, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::BadParams, "beta must be positive and finite");
  }
  const auto& blocks = system.blocks();
  GibbsData g;
  g.beta = beta;

  // log Z = logsumexp_b(-beta E_b + log g_b), shifted by the largest term.
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& b : blocks.blocks) shift = std::max(shift, -beta * b.energy);
  double sum = 0.0;
  for (const auto& b : blocks.blocks) {
    sum += static_cast<double>(b.degeneracy()) * std::exp(-beta * b.energy - shift);
  }
  g.log_z = shift + std::log(sum);

  g.log_weights.resize(system.dim());
  g.weights.resize(system.dim());
  for (std::size_t i = 0; i < system.dim(); ++i) {
    const double lw = -beta * blocks.blocks[blocks.index_to_block[i]].energy - g.log_z;
    g.log_weights[i] = lw;
    g.weights[i] = std::exp(lw);
  }
  return g;
}

long window_index(double energy, double mu, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::BadParams, "epsilon must be positive");
  const double x = (energy - mu) / epsilon;
  if (x >= 0.5) return static_cast<long>(std::floor(x + 0.5));
  if (x <= -0.5) return static_cast<long>(std::ceil(x - 0.5));
  return 0;
}

EnergyWindows energy_windows(const BlockStructure& blocks, double epsilon, double mu,
                             std::span<const double> block_populations) {
  if (!block_populations.empty() && block_populations.size() != blocks.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one population per block expected");
  }
  EnergyWindows out;
  out.epsilon = epsilon;
  out.mu = mu;

  std::map<long, EnergyWindow> by_label;
  std::vector<long> labels(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const long m = window_index(blocks.blocks[b].energy, mu, epsilon);
    labels[b] = m;
    auto& w = by_label[m];
    w.m = m;
    w.center = mu + static_cast<double>(m) * epsilon;
    w.blocks.push_back(b);
    w.degeneracy += blocks.blocks[b].degeneracy();
    if (!block_populations.empty()) w.population += block_populations[b];
  }

  std::map<long, std::size_t> position;
  for (auto& [m, w] : by_label) {
    w.frequency = static_cast<double>(w.degeneracy) / static_cast<double>(blocks.dim());
    position[m] = out.windows.size();
    out.windows.push_back(std::move(w));
  }
  out.block_to_window.resize(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) out.block_to_window[b] = position[labels[b]];
  return out;
}

BlockStructure EnergyWindows::as_blocks(const BlockStructure& blocks) const {
  BlockStructure merged;
  merged.index_to_block.assign(blocks.dim(), 0);
  for (std::size_t w = 0; w < windows.size(); ++w) {
    EnergyBlock block;
    double weighted = 0.0;
    for (auto b : windows[w].blocks) {
      const auto& src = blocks.blocks[b];
      block.members.insert(block.members.end(), src.members.begin(), src.members.end());
      weighted += src.energy * static_cast<double>(src.degeneracy());
    }
    std::sort(block.members.begin(), block.members.end());
    block.energy = weighted / static_cast<double>(block.members.size());
    for (auto idx : block.members) merged.index_to_block[idx] = w;
    merged.blocks.push_back(std::move(block));
  }
  return merged;
}

}  // namespace coherence
