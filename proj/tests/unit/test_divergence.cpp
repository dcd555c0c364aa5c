#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "coherence/alpha_scan.hpp"
#include "coherence/divergence.hpp"
#include "coherence/error.hpp"
#include "helpers.hpp"

using namespace coherence;

namespace {

// Direct classical Renyi sum for 0 < alpha != 1.
double renyi_sum(const std::vector<double>& p, const std::vector<double>& q, double alpha) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  return std::log(s) / (alpha - 1.0);
}

std::vector<double> logs(const std::vector<double>& q) {
  std::vector<double> out;
  for (double x : q) out.push_back(std::log(x));
  return out;
}

ComplexMatrix qubit_state(double a, Complex c) {
  ComplexMatrix m(2, 2);
  m << a, c, std::conj(c), 1.0 - a;
  return m;
}

}  // namespace

TEST_CASE("classical Renyi divergence against direct sums") {
  const std::vector<double> p{0.5, 0.3, 0.2, 0.0};
  const std::vector<double> q{0.1, 0.2, 0.3, 0.4};
  const auto lq = logs(q);
  for (double a : {0.3, 0.5, 0.9, 1.5, 2.0, 7.0}) {
    CHECK(classical_renyi(p, lq, a) == doctest::Approx(renyi_sum(p, q, a)).epsilon(1e-12));
  }
  double kl = 0.0;
  double dmax = -INFINITY;
  for (std::size_t i = 0; i < 3; ++i) {
    kl += p[i] * std::log(p[i] / q[i]);
    dmax = std::max(dmax, std::log(p[i] / q[i]));
  }
  CHECK(classical_renyi(p, lq, 1.0) == doctest::Approx(kl).epsilon(1e-12));
  CHECK(classical_renyi(p, lq, kInfinity) == doctest::Approx(dmax).epsilon(1e-12));
  CHECK(classical_renyi(p, lq, 0.0) == doctest::Approx(-std::log(0.6)).epsilon(1e-12));
}

TEST_CASE("quantum divergences reduce to classical ones on commuting inputs") {
  const std::vector<double> p{0.6, 0.3, 0.1};
  const std::vector<double> q{0.2, 0.5, 0.3};
  ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
  ComplexMatrix sigma = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    rho(i, i) = p[static_cast<std::size_t>(i)];
    sigma(i, i) = q[static_cast<std::size_t>(i)];
  }
  for (double a : {0.0, 0.25, 0.5, 2.0, 5.0, kInfinity}) {
    CHECK(renyi_divergence(rho, sigma, a) == doctest::Approx(classical_renyi(p, logs(q), a)).epsilon(1e-10));
  }
  CHECK(kl_divergence(rho, sigma) == doctest::Approx(classical_renyi(p, logs(q), 1.0)).epsilon(1e-10));
  CHECK_THROWS_AS(renyi_divergence(rho, sigma, 1.0), Error);
}

TEST_CASE("Petz and sandwiched forms on non-commuting qubits") {
  const ComplexMatrix rho = qubit_state(0.7, Complex(0.2, 0.1));
  const ComplexMatrix sigma = qubit_state(0.4, Complex(-0.1, 0.05));
  const ComplexMatrix sr = testing::sqrt2x2(rho);
  const ComplexMatrix ss = testing::sqrt2x2(sigma);
  const double petz_half = -2.0 * std::log((sr * ss).trace().real());
  CHECK(renyi_divergence(rho, sigma, 0.5) == doctest::Approx(petz_half).epsilon(1e-10));

  const ComplexMatrix si = testing::inverse2x2(ss);
  const double sandwiched_two = std::log((rho * si * rho * si).trace().real());
  CHECK(renyi_divergence(rho, sigma, 2.0) == doctest::Approx(sandwiched_two).epsilon(1e-10));
}

TEST_CASE("support mismatch gives infinity above one") {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(1, 1) = 1.0;
  ComplexMatrix sigma = ComplexMatrix::Zero(2, 2);
  sigma(0, 0) = 1.0;
  CHECK(std::isinf(renyi_divergence(rho, sigma, 2.0)));
  CHECK(std::isinf(max_divergence(rho, sigma)));
  CHECK(std::isinf(kl_divergence(rho, sigma)));
}

TEST_CASE("property: divergences are non-negative and vanish only on equal states") {
  std::mt19937_64 rng(21);
  const auto sys = make_qubits(2, 1.0);
  std::vector<double> alphas{0.0};
  for (double a : alpha_grid()) alphas.push_back(a);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = states::random_mixed(sys, rng);
    const auto sigma = states::random_mixed(sys, rng);
    RenyiEvaluator diff(rho.matrix(), sigma.matrix());
    RenyiEvaluator same(rho.matrix(), rho.matrix());
    for (double a : alphas) {
      // Full-rank states: alpha = 0 gives exactly zero, so only alpha > 0 separates them.
      CHECK(diff(a) >= -1e-9);
      if (a > 0.0) CHECK(diff(a) > 1e-9);
      CHECK(std::abs(same(a)) <= 1e-9);
    }
  }
}

TEST_CASE("property: free energy decreases under both dephasings") {
  std::mt19937_64 rng(22);
  const auto sys = make_qubits(2, 1.0);
  const auto g = gibbs(*sys, 1.0);
  std::vector<double> alphas{0.0, 1.0, kInfinity};
  for (double a : alpha_grid()) alphas.push_back(a);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = trial % 2 == 0 ? states::random_pure(sys, rng) : states::random_mixed(sys, rng);
    const auto d = dephase_blocks(rho);
    const auto pi = dephase_full(rho);
    for (double a : alphas) {
      const double f = free_energy(rho, g, a);
      const double fd = free_energy(d, g, a);
      const double fp = free_energy(pi, g, a);
      if (std::isinf(f) && f > 0) continue;
      if (!(f >= fd - 1e-9) || !(fd >= fp - 1e-9)) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("work from internal coherence on simple states") {
  const auto sys = make_qubits(2, 1.0);
  const auto g = gibbs(*sys, 1.0);
  const std::vector<std::size_t> singlet_like{1, 2};
  CHECK(w_coh(states::uniform_superposition(sys, singlet_like), g).value == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(w_coh(states::ghz(2, 1.0), g).value <= 1e-12);
  CHECK(w_coh(dephase_full(states::dicke(2, 1, 1.0)), g).value <= 1e-12);
  const auto dicke = states::dicke(4, 2, 1.0);
  const auto r = w_coh(dicke, gibbs(dicke.system(), 1.0));
  CHECK(r.value == doctest::Approx(std::log(6.0)).epsilon(1e-9));
}

TEST_CASE("property: internal work ignores external coherence") {
  std::mt19937_64 rng(23);
  const auto sys = make_qubits(3, 1.0);
  const auto g = gibbs(*sys, 0.7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = trial % 2 == 0 ? states::random_pure(sys, rng) : states::random_mixed(sys, rng, 2);
    const double w = w_coh(rho, g).value;
    CHECK(w >= 0.0);
    CHECK(w == doctest::Approx(w_coh(dephase_blocks(rho), g).value).epsilon(1e-12));
  }
}

TEST_CASE("property: incoherent work equals its closed form") {
  std::mt19937_64 rng(24);
  const auto sys = make_system({{0.0, 1.0}, {0.0, 0.5, 2.0}});
  const auto g = gibbs(*sys, 1.1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = states::random_mixed(sys, rng, 1 + trial % 6);
    const double scanned = w_incoh(rho, g).value;
    const double closed = std::max(w_incoh_closed_form(rho, g), 0.0);
    CHECK(std::abs(scanned - closed) <= 1e-9);
  }
}

TEST_CASE("total work and work distance") {
  const auto sys = make_qubits(2, 1.0);
  const auto g = gibbs(*sys, 1.0);
  const auto psi = states::dicke(2, 1, 1.0);
  const auto d = dephase_blocks(psi);
  const auto gamma = QuantumState(sys, g.matrix());
  CHECK(w_tot(psi, g).value == doctest::Approx(work_distance(d, gamma, g).value).epsilon(1e-12));
  CHECK_THROWS_AS(work_distance(states::ghz(2, 1.0), gamma, g), Error);
  CHECK(work_distance(gamma, gamma, g).value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("pure-state extraction criterion on the two-qubit family") {
  for (double beta : {0.5, 1.0, 2.0}) {
    const double low = 1.0 / (1.0 + std::exp(beta) + std::exp(-beta));
    const double high = std::exp(beta) / (1.0 + std::exp(beta));
    for (int i = 1; i <= 50; ++i) {
      const double p1 = i / 51.0;
      const auto psi = states::two_qubit_psi(0.5 * (1.0 - p1), p1, 0.5 * (1.0 - p1), 1.0);
      const auto g = gibbs(psi.system(), beta);
      const auto r = observation1_criterion(psi, g);
      CHECK(r.extractable == (w_coh(psi, g).value > 1e-9));
      if (p1 < low) CHECK_FALSE(r.extractable);
      if (p1 > high) CHECK(r.extractable);
    }
  }
  CHECK_THROWS_AS(observation1_criterion(dephase_full(states::ghz(2, 1.0)), gibbs(*make_qubits(2, 1.0), 1.0)), Error);
}

TEST_CASE("free-energy correlation vanishes on products") {
  const auto one = states::coherent_gibbs(make_qubits(1, 1.0), 0.4);
  const auto pair = states::tensor_power(one, 2);
  for (double a : {0.0, 0.5, 1.0, 2.0}) CHECK(std::abs(free_energy_correlation(pair, 1.0, a)) < 1e-9);
  CHECK(free_energy_correlation(states::ghz(2, 1.0), 1.0, 1.0) > 0.1);
}

TEST_CASE("asymmetry of the supplemental state") {
  const auto rho = states::supplemental_rho(1.0);
  const auto modes = asymmetry_modes(rho);
  REQUIRE(modes.size() >= 3);
  double total = 0.0;
  for (const auto& m : modes) {
    if (m.omega > 0.0) total += m.amplitude;
  }
  CHECK(total == doctest::Approx(0.3));
  CHECK(asymmetry_entropy(rho, 1.0) > 0.0);
  CHECK(asymmetry_entropy(dephase_blocks(rho), 1.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("alpha scan locates interior and limiting minima") {
  const auto s = scan_infimum([](double a) { return std::isinf(a) ? 10.0 : (a - 0.37) * (a - 0.37); });
  CHECK(s.infimum_alpha == doctest::Approx(0.37).epsilon(1e-5));
  CHECK(s.infimum < 1e-10);
  CHECK_FALSE(s.attained_at_zero());

  const auto dec = scan_infimum([](double a) { return std::isinf(a) ? 0.0 : 1.0 / (1.0 + a); });
  CHECK(std::isinf(dec.infimum_alpha));
  const auto inc = scan_infimum([](double a) { return std::isinf(a) ? 5.0 : a; });
  CHECK(inc.attained_at_zero());
  CHECK(alpha_grid().size() == 99 + 90 + 4);
}
