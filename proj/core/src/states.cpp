#include "coherence/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "coherence/error.hpp"

namespace coherence {

namespace {

// Dense density matrices beyond this are refused by the constructors.
constexpr std::size_t kMaxDenseDim = std::size_t{1} << 12;
constexpr std::size_t kMaxVectorQubits = 20;

void check_qubit_count(std::size_t n, std::size_t limit) {
  if (n == 0) throw Error(ErrorCode::BadParams, "need at least one qubit");
  if (n > limit) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " qubits exceeds the limit of " + std::to_string(limit));
  }
}

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace

QuantumState::QuantumState(SystemPtr system, ComplexMatrix matrix)
    : system_(std::move(system)), matrix_(std::move(matrix)) {
  if (!system_) throw Error(ErrorCode::BadParams, "state needs a system");
  const auto d = static_cast<Eigen::Index>(system_->dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is " + std::to_string(matrix_.rows()) + "x" +
                                                  std::to_string(matrix_.cols()) + ", system dimension is " +
                                                  std::to_string(d));
  }
  if (!is_hermitian(matrix_)) throw Error(ErrorCode::NonHermitian, "density matrix is not Hermitian");
  const Complex tr = trace(matrix_);
  if (std::abs(tr - Complex(1.0, 0.0)) > 1e-10) {
    throw Error(ErrorCode::InvalidState, "density matrix trace is " + std::to_string(tr.real()));
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  const double min_eig = eigh(matrix_).eigenvalues.minCoeff();
  if (min_eig < -1e-10) {
    throw Error(ErrorCode::InvalidState, "density matrix has eigenvalue " + std::to_string(min_eig));
  }
}

QuantumState::QuantumState(SystemPtr system, ComplexMatrix matrix, Unchecked)
    : system_(std::move(system)), matrix_(std::move(matrix)) {}

QuantumState QuantumState::pure(SystemPtr system, const ComplexVector& v) {
  if (!system) throw Error(ErrorCode::BadParams, "state needs a system");
  if (static_cast<std::size_t>(v.size()) != system->dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match system dimension");
  }
  if (std::abs(v.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::BadParams, "state vector is not normalized");
  }
  return QuantumState(std::move(system), outer(v), Unchecked{});
}

ComplexMatrix dephase_full(const ComplexMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  out.diagonal() = rho.diagonal();
  return out;
}

ComplexMatrix dephase_blocks(const ComplexMatrix& rho, const BlockStructure& blocks) {
  if (static_cast<std::size_t>(rho.rows()) != blocks.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix dimension does not match block structure");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& block : blocks.blocks) {
    for (auto a : block.members) {
      for (auto b : block.members) {
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      }
    }
  }
  return out;
}

QuantumState dephase_full(const QuantumState& rho) {
  return QuantumState(rho.system_ptr(), dephase_full(rho.matrix()), QuantumState::Unchecked{});
}

QuantumState dephase_blocks(const QuantumState& rho) {
  return QuantumState(rho.system_ptr(), dephase_blocks(rho.matrix(), rho.system().blocks()),
                      QuantumState::Unchecked{});
}

ClassicalEnergyData classical_data(const QuantumState& rho) {
  const auto& blocks = rho.system().blocks();
  ClassicalEnergyData out;
  out.index_probabilities.resize(rho.dim());
  out.block_probabilities.assign(blocks.size(), 0.0);
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const double p = rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    out.index_probabilities[i] = p;
    out.block_probabilities[blocks.index_to_block[i]] += p;
  }
  return out;
}

QuantumState reduced_state(const QuantumState& rho, std::size_t i) {
  const auto& sys = rho.system();
  if (i >= sys.size()) throw Error(ErrorCode::BadParams, "subsystem index out of range");
  const std::size_t d = sys.local_dim(i);
  std::size_t inner = 1;
  for (std::size_t j = i + 1; j < sys.size(); ++j) inner *= sys.local_dim(j);
  const std::size_t outer_count = sys.dim() / (d * inner);

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const auto& m = rho.matrix();
  for (std::size_t o = 0; o < outer_count; ++o) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        Complex sum = 0.0;
        for (std::size_t in = 0; in < inner; ++in) {
          const auto ia = static_cast<Eigen::Index>((o * d + a) * inner + in);
          const auto ib = static_cast<Eigen::Index>((o * d + b) * inner + in);
          sum += m(ia, ib);
        }
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += sum;
      }
    }
  }
  auto local = make_system({sys.local_spectrum(i)}, sys.block_tolerance());
  return QuantumState(std::move(local), std::move(out));
}

namespace states {

ComplexVector ghz_vector(std::size_t n) {
  check_qubit_count(n, kMaxVectorQubits);
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return v;
}

ComplexVector dicke_vector(std::size_t n, std::size_t k) {
  check_qubit_count(n, kMaxVectorQubits);
  if (k > n) throw Error(ErrorCode::BadParams, "Dicke excitation count exceeds N");
  const std::size_t dim = std::size_t{1} << n;
  std::size_t count = 0;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    if (static_cast<std::size_t>(std::popcount(idx)) == k) ++count;
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(count));
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    if (static_cast<std::size_t>(std::popcount(idx)) == k) v(static_cast<Eigen::Index>(idx)) = amp;
  }
  return v;
}

QuantumState ghz(std::size_t n, double omega) {
  check_qubit_count(n, kMaxQubits);
  return QuantumState::pure(make_qubits(n, omega), ghz_vector(n));
}

QuantumState dicke(std::size_t n, std::size_t k, double omega) {
  check_qubit_count(n, kMaxQubits);
  return QuantumState::pure(make_qubits(n, omega), dicke_vector(n, k));
}

QuantumState coherent_gibbs(SystemPtr system, double beta) {
  if (!system) throw Error(ErrorCode::BadParams, "state needs a system");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::BadParams, "beta must be positive and finite");
  if (system->dim() > kMaxDenseDim) throw Error(ErrorCode::TooLarge, "system too large for a dense state");
  const auto& e = system->total_energies();
  double shift = -std::numeric_limits<double>::infinity();
  for (double x : e) shift = std::max(shift, -beta * x);
  double sum = 0.0;
  for (double x : e) sum += std::exp(-beta * x - shift);
  const double log_z = shift + std::log(sum);
  ComplexVector v(static_cast<Eigen::Index>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i) v(static_cast<Eigen::Index>(i)) = std::exp(0.5 * (-beta * e[i] - log_z));
  v.normalize();
  return QuantumState::pure(std::move(system), v);
}

QuantumState two_qubit_psi(double p0, double p1, double p2, double omega) {
  for (double p : {p0, p1, p2}) {
    if (!(p >= -1e-12)) throw Error(ErrorCode::BadParams, "probabilities must be non-negative");
  }
  if (std::abs(p0 + p1 + p2 - 1.0) > 1e-10) throw Error(ErrorCode::BadParams, "probabilities must sum to 1");
  p0 = std::max(p0, 0.0);
  p1 = std::max(p1, 0.0);
  p2 = std::max(p2, 0.0);
  ComplexVector v(4);
  v << std::sqrt(p0), std::sqrt(p1 / 2.0), std::sqrt(p1 / 2.0), std::sqrt(p2);
  v.normalize();
  return QuantumState::pure(make_qubits(2, omega), v);
}

QuantumState tensor_power(const QuantumState& rho, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::BadParams, "tensor power needs n >= 1");
  std::vector<std::vector<double>> spectra;
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& s : rho.system().local_spectra()) spectra.push_back(s);
  }
  auto sys = make_system(std::move(spectra), rho.system().block_tolerance());
  if (sys->dim() > kMaxDenseDim) throw Error(ErrorCode::TooLarge, "tensor power too large for a dense state");
  ComplexMatrix m = rho.matrix();
  for (std::size_t k = 1; k < n; ++k) m = tensor(m, rho.matrix());
  return QuantumState(std::move(sys), std::move(m));
}

QuantumState uniform_superposition(SystemPtr system, std::span<const std::size_t> indices) {
  if (!system) throw Error(ErrorCode::BadParams, "state needs a system");
  if (indices.empty()) throw Error(ErrorCode::BadParams, "index set is empty");
  if (system->dim() > kMaxDenseDim) throw Error(ErrorCode::TooLarge, "system too large for a dense state");
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::BadParams, "index set has duplicates");
  }
  if (sorted.back() >= system->dim()) throw Error(ErrorCode::BadParams, "index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(system->dim()));
  const double amp = 1.0 / std::sqrt(static_cast<double>(sorted.size()));
  for (auto i : sorted) v(static_cast<Eigen::Index>(i)) = amp;
  return QuantumState::pure(std::move(system), v);
}

QuantumState dense(SystemPtr system, ComplexMatrix matrix) { return QuantumState(std::move(system), std::move(matrix)); }

namespace {
SystemPtr ladder(double omega) { return make_system({{0.0, omega, 2.0 * omega, 3.0 * omega}}); }
}  // namespace

QuantumState supplemental_rho(double omega) {
  ComplexMatrix m(4, 4);
  m << 0.5, 0.0, 0.1, 0.1,
       0.0, 0.2, 0.0, 0.0,
       0.1, 0.0, 0.25, 0.1,
       0.1, 0.0, 0.1, 0.05;
  return QuantumState(ladder(omega), m);
}

QuantumState supplemental_sigma(double omega) {
  ComplexMatrix m(4, 4);
  m << 0.5, 0.099, 0.099, 0.099,
       0.099, 0.25, 0.0, 0.0,
       0.099, 0.0, 0.2, 0.0,
       0.099, 0.0, 0.0, 0.05;
  return QuantumState(ladder(omega), m);
}

QuantumState random_pure(SystemPtr system, std::mt19937_64& rng) {
  if (!system) throw Error(ErrorCode::BadParams, "state needs a system");
  if (system->dim() > kMaxDenseDim) throw Error(ErrorCode::TooLarge, "system too large for a dense state");
  std::normal_distribution<double> normal;
  ComplexVector v(static_cast<Eigen::Index>(system->dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  v.normalize();
  return QuantumState::pure(std::move(system), v);
}

QuantumState random_mixed(SystemPtr system, std::mt19937_64& rng, std::size_t rank) {
  if (!system) throw Error(ErrorCode::BadParams, "state needs a system");
  if (system->dim() > kMaxDenseDim) throw Error(ErrorCode::TooLarge, "system too large for a dense state");
  const auto d = static_cast<Eigen::Index>(system->dim());
  const auto r = static_cast<Eigen::Index>(rank == 0 ? system->dim() : rank);
  if (r > d) throw Error(ErrorCode::BadParams, "rank exceeds dimension");
  std::normal_distribution<double> normal;
  ComplexMatrix g(d, r);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  ComplexMatrix m = g * g.adjoint();
  m /= trace(m).real();
  m = 0.5 * (m + m.adjoint()).eval();
  return QuantumState(std::move(system), std::move(m));
}

}  // namespace states
}  // namespace coherence
