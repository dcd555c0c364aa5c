#include "coherence/clock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "coherence/alpha_scan.hpp"
#include "coherence/divergence.hpp"
#include "coherence/error.hpp"

namespace coherence {

namespace {

struct EigenFrame {
  RealVector lambda;      // clipped at zero
  Eigen::MatrixXd h_abs2;  // |<i|H|j>|^2
};

EigenFrame frame(const ComplexMatrix& rho, const ComplexMatrix& h) {
  if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "state and Hamiltonian differ in dimension");
  }
  if (!is_hermitian(h)) throw Error(ErrorCode::NonHermitian, "Hamiltonian is not Hermitian");
  const auto eig = eigh(rho);
  EigenFrame f;
  f.lambda = eig.eigenvalues.cwiseMax(0.0);
  f.h_abs2 = (eig.eigenvectors.adjoint() * h * eig.eigenvectors).cwiseAbs2();
  return f;
}

std::string label(const char* prefix, double x) {
  char buf[64];
  if (std::isinf(x)) {
    std::snprintf(buf, sizeof buf, "%s[inf]", prefix);
  } else {
    std::snprintf(buf, sizeof buf, "%s[%.6g]", prefix, x);
  }
  return buf;
}

constexpr double kMonotoneTolerance = 1e-9;

}  // namespace

double qfi(const ComplexMatrix& rho, const ComplexMatrix& h) {
  const auto f = frame(rho, h);
  const auto n = f.lambda.size();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double s = f.lambda[i] + f.lambda[j];
      if (s <= 1e-14) continue;
      const double d = f.lambda[i] - f.lambda[j];
      sum += 2.0 * d * d / s * f.h_abs2(i, j);
    }
  }
  return std::max(sum, 0.0);
}

double qfi(const QuantumState& rho) { return qfi(rho.matrix(), rho.system().hamiltonian()); }

double skew_information(const ComplexMatrix& rho, const ComplexMatrix& h, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::BadAlpha, "skew information needs alpha in (0,1)");
  }
  const auto f = frame(rho, h);
  const auto n = f.lambda.size();
  RealVector pa(n);
  RealVector pb(n);
  // Roundoff eigenvalues of order 1e-16 would come back as 1e-4 under x^(1/4),
  // so the fractional powers only see the support.
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool in_support = f.lambda[i] > kSupportCutoff;
    pa[i] = in_support ? std::pow(f.lambda[i], alpha) : 0.0;
    pb[i] = in_support ? std::pow(f.lambda[i], 1.0 - alpha) : 0.0;
  }
  // Tr(rho H^2) - Tr(rho^a H rho^{1-a} H) = sum_ij (l_i - l_i^a l_j^{1-a}) |H_ij|^2
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) sum += (f.lambda[i] - pa[i] * pb[j]) * f.h_abs2(i, j);
  }
  return std::max(sum, 0.0);
}

double skew_information(const QuantumState& rho, double alpha) {
  return skew_information(rho.matrix(), rho.system().hamiltonian(), alpha);
}

double variance(const ComplexMatrix& rho, const ComplexMatrix& h) {
  if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "state and Hamiltonian differ in dimension");
  }
  const double mean = (rho * h).trace().real();
  const double second = (rho * h * h).trace().real();
  return std::max(second - mean * mean, 0.0);
}

double variance(const QuantumState& rho) { return variance(rho.matrix(), rho.system().hamiltonian()); }

double pure_distribution_qfi(std::span<const double> energies, std::span<const double> probabilities) {
  if (energies.size() != probabilities.size()) {
    throw Error(ErrorCode::DimensionMismatch, "energies and probabilities differ in length");
  }
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    total += probabilities[i];
    mean += probabilities[i] * energies[i];
  }
  mean /= total;
  double var = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const double d = energies[i] - mean;
    var += probabilities[i] * d * d;
  }
  return 4.0 * var / total;
}

ClockReport clock_report(const QuantumState& rho, std::span<const double> skew_alphas) {
  ClockReport out;
  const ComplexMatrix h = rho.system().hamiltonian();
  out.qfi = qfi(rho.matrix(), h);
  out.variance = variance(rho.matrix(), h);
  const std::vector<double> fallback{0.5};
  const std::span<const double> alphas = skew_alphas.empty() ? std::span<const double>(fallback) : skew_alphas;
  for (double a : alphas) out.skew[a] = skew_information(rho.matrix(), h, a);
  return out;
}

std::pair<double, double> coherent_gibbs_qfi_identity(const SystemPtr& system, double beta) {
  const double value = qfi(states::coherent_gibbs(system, beta));
  const auto& e = system->total_energies();
  auto log_z = [&](double b) {
    double shift = -std::numeric_limits<double>::infinity();
    for (double x : e) shift = std::max(shift, -b * x);
    double sum = 0.0;
    for (double x : e) sum += std::exp(-b * x - shift);
    return shift + std::log(sum);
  };
  const double step = 1e-4 * beta;
  const double second = (log_z(beta + step) - 2.0 * log_z(beta) + log_z(beta - step)) / (step * step);
  return {value, 4.0 * second};
}

CovariantChannel CovariantChannel::block_dephase() { return CovariantChannel(Kind::BlockDephase, 1.0); }

CovariantChannel CovariantChannel::partial_dephase(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorCode::BadParams, "lambda must lie in [0,1]");
  return CovariantChannel(Kind::PartialDephase, lambda);
}

CovariantChannel CovariantChannel::gibbs_mix(double p, GibbsData gibbs) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadParams, "p must lie in [0,1]");
  CovariantChannel c(Kind::GibbsMix, p);
  c.gibbs_ = std::move(gibbs);
  return c;
}

QuantumState CovariantChannel::apply(const QuantumState& rho) const {
  switch (kind_) {
    case Kind::BlockDephase:
      return dephase_blocks(rho);
    case Kind::PartialDephase: {
      const ComplexMatrix d = dephase_blocks(rho.matrix(), rho.system().blocks());
      return QuantumState(rho.system_ptr(), (1.0 - parameter_) * rho.matrix() + parameter_ * d);
    }
    case Kind::GibbsMix:
      if (gibbs_.weights.size() != rho.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "Gibbs data does not match the state's dimension");
      }
      return QuantumState(rho.system_ptr(), (1.0 - parameter_) * rho.matrix() + parameter_ * gibbs_.matrix());
  }
  return rho;
}

std::string CovariantChannel::name() const {
  switch (kind_) {
    case Kind::BlockDephase: return "block_dephase";
    case Kind::PartialDephase: return label("partial_dephase", parameter_);
    case Kind::GibbsMix: return label("gibbs_mix", parameter_);
  }
  return "unknown";
}

std::vector<std::string> AuditReport::forbidding() const {
  std::vector<std::string> out;
  auto scan = [&](const MonotoneChange& c) {
    if (c.delta() > kMonotoneTolerance) out.push_back(c.name);
  };
  scan(qfi);
  for (const auto* group : {&skew, &free_energies, &asymmetries, &modes}) {
    for (const auto& c : *group) scan(c);
  }
  return out;
}

namespace {
bool non_increasing(const std::vector<MonotoneChange>& changes) {
  return std::all_of(changes.begin(), changes.end(),
                     [](const MonotoneChange& c) { return c.delta() <= kMonotoneTolerance; });
}
}  // namespace

bool AuditReport::free_energies_non_increasing() const { return non_increasing(free_energies); }
bool AuditReport::asymmetries_non_increasing() const { return non_increasing(asymmetries); }
bool AuditReport::modes_non_increasing() const { return non_increasing(modes); }

AuditReport monotonicity_audit(const QuantumState& rho, const QuantumState& sigma, const GibbsData& gibbs) {
  if (rho.dim() != sigma.dim() || gibbs.weights.size() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "audit arguments differ in dimension");
  }
  const ComplexMatrix h = rho.system().hamiltonian();
  AuditReport report;
  report.qfi = {"qfi", qfi(rho.matrix(), h), qfi(sigma.matrix(), h)};
  for (double a : {0.25, 0.5, 0.75}) {
    report.skew.push_back(
        {label("skew", a), skew_information(rho.matrix(), h, a), skew_information(sigma.matrix(), h, a)});
  }

  std::vector<double> alphas{0.0};
  for (double a : alpha_grid()) {
    if (a > 1.0 && alphas.back() < 1.0) alphas.push_back(1.0);
    alphas.push_back(a);
  }
  alphas.push_back(kInfinity);

  const ComplexMatrix gamma = gibbs.matrix();
  const RenyiEvaluator f_rho(rho.matrix(), gamma);
  const RenyiEvaluator f_sigma(sigma.matrix(), gamma);
  const auto& blocks = rho.system().blocks();
  const RenyiEvaluator a_rho(rho.matrix(), dephase_blocks(rho.matrix(), blocks));
  const RenyiEvaluator a_sigma(sigma.matrix(), dephase_blocks(sigma.matrix(), blocks));
  for (double a : alphas) {
    report.free_energies.push_back({label("F", a), f_rho(a) - gibbs.log_z, f_sigma(a) - gibbs.log_z});
    report.asymmetries.push_back({label("A", a), a_rho(a), a_sigma(a)});
  }

  const auto before = asymmetry_modes(rho);
  const auto after = asymmetry_modes(sigma);
  for (std::size_t k = 0; k < before.size() && k < after.size(); ++k) {
    if (before[k].omega <= 0.0) continue;
    report.modes.push_back({label("mode", before[k].omega), before[k].amplitude, after[k].amplitude});
  }
  return report;
}

bool producibility_witness(const QuantumState& rho, std::size_t k) {
  const auto gap = rho.system().uniform_qubit_gap();
  if (!gap) throw Error(ErrorCode::WrongSystemShape, "producibility witness needs qubits with a common gap");
  if (k == 0) throw Error(ErrorCode::BadParams, "k must be at least 1");
  const double n = static_cast<double>(rho.system().size());
  return qfi(rho) > static_cast<double>(k) * n * (*gap) * (*gap) + 1e-9;
}

}  // namespace coherence
