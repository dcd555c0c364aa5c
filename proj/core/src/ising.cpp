#include "coherence/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "coherence/clock.hpp"
#include "coherence/divergence.hpp"
#include "coherence/error.hpp"

namespace coherence::ising {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> momenta(std::size_t n, Sector sector) {
  std::vector<double> k;
  const long half = static_cast<long>(n / 2);
  const double shift = sector == Sector::NS ? 0.5 : 0.0;
  for (long m = -half; m < half; ++m) k.push_back(2.0 * kPi * (static_cast<double>(m) + shift) / static_cast<double>(n));
  return k;
}

}  // namespace

void IsingChain::validate() const {
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::BadParams, "chain length must be even and >= 2");
  if (!(h >= 0.0) || !(j >= 0.0) || !std::isfinite(h) || !std::isfinite(j)) {
    throw Error(ErrorCode::BadParams, "h and J must be finite and non-negative");
  }
}

double dispersion(double h, double j, double k) {
  return 2.0 * std::sqrt(std::max(h * h + j * j - 2.0 * h * j * std::cos(k), 0.0));
}

SectorSpectrum sector_spectrum(const IsingChain& chain, Sector sector, std::size_t max_levels) {
  chain.validate();
  if (chain.n > kMaxFermionSites) {
    throw Error(ErrorCode::TooLarge, "free-fermion enumeration limited to N <= 24");
  }
  SectorSpectrum out;
  out.sector = sector;
  out.momenta = momenta(chain.n, sector);
  for (double k : out.momenta) out.mode_energies.push_back(dispersion(chain.h, chain.j, k));
  if (sector == Sector::R) {
    // Zero mode keeps its sign: -2(J - h).
    out.mode_energies[chain.n / 2] = 2.0 * (chain.h - chain.j);
  }

  double offset = 0.0;
  for (double e : out.mode_energies) offset -= 0.5 * e;
  const unsigned parity = sector == Sector::NS ? 0u : 1u;
  const std::uint32_t count = std::uint32_t{1} << chain.n;
  out.levels.reserve(count / 2);
  for (std::uint32_t occ = 0; occ < count; ++occ) {
    if ((static_cast<unsigned>(std::popcount(occ)) & 1u) != parity) continue;
    double e = offset;
    for (std::uint32_t bits = occ; bits != 0; bits &= bits - 1) {
      e += out.mode_energies[static_cast<std::size_t>(std::countr_zero(bits))];
    }
    out.levels.push_back({e, occ});
  }
  std::sort(out.levels.begin(), out.levels.end(), [](const Level& a, const Level& b) {
    return a.energy < b.energy || (a.energy == b.energy && a.occupation < b.occupation);
  });
  if (max_levels > 0 && out.levels.size() > max_levels) out.levels.resize(max_levels);
  return out;
}

std::vector<double> full_spectrum(const IsingChain& chain) {
  std::vector<double> all;
  for (Sector s : {Sector::NS, Sector::R}) {
    for (const auto& level : sector_spectrum(chain, s).levels) all.push_back(level.energy);
  }
  std::sort(all.begin(), all.end());
  return all;
}

Eigen::MatrixXd field_hamiltonian(const IsingChain& chain) {
  chain.validate();
  if (chain.n > kMaxEdSites) throw Error(ErrorCode::TooLarge, "explicit Hamiltonian limited to N <= 12");
  const std::size_t dim = std::size_t{1} << chain.n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    // sz = +1 on set bits, -1 on clear bits
    const double up = static_cast<double>(std::popcount(idx));
    const double sz_total = 2.0 * up - static_cast<double>(chain.n);
    h(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) = -chain.h * sz_total;
  }
  return h;
}

Eigen::MatrixXd spin_hamiltonian(const IsingChain& chain) {
  Eigen::MatrixXd h = field_hamiltonian(chain);
  const std::size_t dim = std::size_t{1} << chain.n;
  for (std::size_t site = 0; site < chain.n; ++site) {
    // Site i lives on bit N-1-i; the bond (N-1, 0) closes the ring.
    const std::size_t a = chain.n - 1 - site;
    const std::size_t b = chain.n - 1 - ((site + 1) % chain.n);
    const std::size_t flip = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      h(static_cast<Eigen::Index>(idx ^ flip), static_cast<Eigen::Index>(idx)) -= chain.j;
    }
  }
  return h;
}

std::vector<double> ed_oracle(const IsingChain& chain) {
  const Eigen::MatrixXd h = spin_hamiltonian(chain);
  const std::size_t dim = std::size_t{1} << chain.n;
  std::vector<double> out;
  out.reserve(dim);
  // sx sx preserves sz parity, so each parity sector is diagonalized on its own.
  for (unsigned parity : {0u, 1u}) {
    std::vector<Eigen::Index> idx;
    for (std::size_t i = 0; i < dim; ++i) {
      if ((static_cast<unsigned>(std::popcount(i)) & 1u) == parity) idx.push_back(static_cast<Eigen::Index>(i));
    }
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd sub(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index c = 0; c < m; ++c) sub(r, c) = h(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sub, Eigen::EigenvaluesOnly);
    for (Eigen::Index r = 0; r < m; ++r) out.push_back(solver.eigenvalues()[r]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::map<long, std::size_t> degeneracy_histogram(const IsingChain& chain, double epsilon, double mu) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::BadParams, "epsilon must be positive");
  std::map<long, std::size_t> counts;
  for (double e : full_spectrum(chain)) ++counts[window_index(e, mu, epsilon)];
  return counts;
}

SystemPtr effective_register_system(const IsingChain& chain) {
  chain.validate();
  std::vector<std::vector<double>> spectra;
  for (double k : momenta(chain.n, Sector::NS)) {
    const double e = dispersion(chain.h, chain.j, k);
    spectra.push_back({-0.5 * e, 0.5 * e});
  }
  return make_system(std::move(spectra));
}

BoundEntry ising_tradeoff(const QuantumState& rho_effective, const GibbsData& gibbs, const IsingChain& chain) {
  chain.validate();
  const auto& sys = rho_effective.system();
  const auto momenta_ns = momenta(chain.n, Sector::NS);
  if (sys.size() != chain.n) throw Error(ErrorCode::WrongSystemShape, "state is not on the quasiparticle registers");
  for (std::size_t i = 0; i < chain.n; ++i) {
    const double e = dispersion(chain.h, chain.j, momenta_ns[i]);
    const auto& s = sys.local_spectrum(i);
    if (s.size() != 2 || std::abs(s[0] + 0.5 * e) > 1e-12 * (1.0 + e) || std::abs(s[1] - 0.5 * e) > 1e-12 * (1.0 + e)) {
      throw Error(ErrorCode::WrongSystemShape, "state is not on the quasiparticle registers");
    }
  }
  const double n = static_cast<double>(chain.n);
  const double scale = 8.0 * n * (chain.h * chain.h + chain.j * chain.j);
  const double w = w_coh(rho_effective, gibbs).value;
  const double clock = scale > 0.0 ? qfi(rho_effective) / scale : 0.0;
  return {"ising_tradeoff", w + clock, n * std::numbers::ln2};
}

QfiSandwich ising_qfi_bounds(const ComplexMatrix& rho, const IsingChain& chain) {
  chain.validate();
  if (chain.n > 10) throw Error(ErrorCode::TooLarge, "QFI sandwich limited to N <= 10");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << chain.n);
  if (rho.rows() != dim || rho.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "state dimension must be 2^N");
  }
  const ComplexMatrix h0 = field_hamiltonian(chain).cast<Complex>();
  const ComplexMatrix h = spin_hamiltonian(chain).cast<Complex>();
  const double n2 = static_cast<double>(chain.n * chain.n);
  const double q0 = qfi(rho, h0);
  QfiSandwich out;
  out.value = qfi(rho, h);
  out.lower = q0 - 8.0 * chain.h * chain.j * n2;
  out.upper = q0 + 8.0 * chain.h * chain.j * n2 + 4.0 * chain.j * chain.j * n2;
  return out;
}

}  // namespace coherence::ising
