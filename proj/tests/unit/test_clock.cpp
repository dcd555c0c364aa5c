#include <doctest.h>

#include <cmath>
#include <random>

#include "coherence/clock.hpp"
#include "coherence/divergence.hpp"
#include "coherence/error.hpp"
#include "helpers.hpp"

using namespace coherence;

namespace {

ComplexMatrix qubit(double a, Complex c) {
  ComplexMatrix m(2, 2);
  m << a, c, std::conj(c), 1.0 - a;
  return m;
}

}  // namespace

TEST_CASE("qubit QFI equals the Bloch-vector formula") {
  // Rotation about z keeps |r| fixed, so I_F = omega^2 (r_x^2 + r_y^2) = 4 omega^2 |rho_01|^2.
  const auto sys = make_qubits(1, 1.7);
  for (auto [a, c] : {std::pair{0.6, Complex(0.2, 0.1)}, std::pair{0.5, Complex(0.0, 0.45)},
                      std::pair{0.9, Complex(0.05, 0.0)}}) {
    const ComplexMatrix rho = qubit(a, c);
    CHECK(qfi(rho, sys->hamiltonian()) == doctest::Approx(4.0 * 1.7 * 1.7 * std::norm(c)).epsilon(1e-12));
  }
}

TEST_CASE("skew information at one half against matrix square roots") {
  const ComplexMatrix rho = qubit(0.7, Complex(0.15, -0.2));
  const ComplexMatrix h = make_qubits(1, 1.0)->hamiltonian();
  const ComplexMatrix s = testing::sqrt2x2(rho);
  const double expected = (rho * h * h).trace().real() - (s * h * s * h).trace().real();
  CHECK(skew_information(rho, h, 0.5) == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(skew_information(rho, h, 1.0), Error);
}

TEST_CASE("supplemental example clock values") {
  const auto rho = states::supplemental_rho(1.0);
  const auto sigma = states::supplemental_sigma(1.0);
  CHECK(std::abs(qfi(rho) - 0.843) <= 1.5e-3);
  CHECK(std::abs(qfi(sigma) - 0.959) <= 1.5e-3);
  CHECK(std::abs(skew_information(rho, 0.5) - 0.153) <= 1.5e-3);
  CHECK(std::abs(skew_information(sigma, 0.5) - 0.163) <= 1.5e-3);
}

TEST_CASE("GHZ QFI is N^2 omega^2") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const double omega = 0.8;
    CHECK(qfi(states::ghz(n, omega)) == doctest::Approx(static_cast<double>(n * n) * omega * omega).epsilon(1e-12));
  }
}

TEST_CASE("property: QFI is bounded by four times the variance") {
  std::mt19937_64 rng(31);
  const auto sys = make_system({{0.0, 1.0}, {0.0, 0.7, 1.9}});
  for (int t = 0; t < 200; ++t) {
    const auto rho = states::random_mixed(sys, rng, 1 + t % 6);
    const double q = qfi(rho);
    const double v = variance(rho);
    CHECK(q <= 4.0 * v + 1e-9);
    // I_F / 8 <= I_{1/2} <= I_F / 4.
    const double s = skew_information(rho, 0.5);
    CHECK(s <= q / 4.0 + 1e-9);
    CHECK(s >= q / 8.0 - 1e-9);
  }
}

TEST_CASE("property: QFI ignores energy offsets") {
  std::mt19937_64 rng(32);
  const auto sys = make_qubits(3, 1.0);
  const ComplexMatrix h = sys->hamiltonian();
  const ComplexMatrix id = ComplexMatrix::Identity(8, 8);
  for (int t = 0; t < 20; ++t) {
    const auto rho = states::random_mixed(sys, rng);
    for (double c : {-3.0, 0.5, 12.0}) CHECK(std::abs(qfi(rho.matrix(), h + c * id) - qfi(rho.matrix(), h)) <= 1e-9);
  }
}

TEST_CASE("pure distribution QFI needs no matrices") {
  const auto sys = make_system({{0.0, 1.0, 2.0, 3.0, 4.0, 5.0}});
  const std::vector<std::size_t> idx{0, 1, 2, 3};
  const auto psi = states::uniform_superposition(sys, idx);
  const std::vector<double> e{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> p(4, 0.25);
  // Uniform on {0..K}: variance ((K+1)^2 - 1)/12.
  CHECK(pure_distribution_qfi(e, p) == doctest::Approx(4.0 * 15.0 / 12.0).epsilon(1e-12));
  CHECK(qfi(psi) == doctest::Approx(pure_distribution_qfi(e, p)).epsilon(1e-12));
}

TEST_CASE("clock report and coherent Gibbs identity") {
  const auto sys = make_system({{0.0, 1.0}, {0.0, 0.5, 2.0}});
  const auto report = clock_report(states::coherent_gibbs(sys, 0.9));
  CHECK(report.skew.count(0.5) == 1);
  const auto [q, fd] = coherent_gibbs_qfi_identity(sys, 0.9);
  CHECK(q == doctest::Approx(fd).epsilon(1e-6));
  CHECK(q == doctest::Approx(report.qfi).epsilon(1e-12));
}

TEST_CASE("covariant channels") {
  const auto sys = make_qubits(2, 1.0);
  const auto g = gibbs(*sys, 1.0);
  const auto psi = states::two_qubit_psi(0.3, 0.4, 0.3, 1.0);
  CHECK(max_abs(CovariantChannel::block_dephase().apply(psi).matrix() - dephase_blocks(psi).matrix()) == 0.0);
  CHECK(max_abs(CovariantChannel::gibbs_mix(1.0, g).apply(psi).matrix() - g.matrix()) < 1e-15);
  const auto half = CovariantChannel::partial_dephase(0.5).apply(psi);
  CHECK(half.matrix()(0, 3).real() == doctest::Approx(0.5 * psi.matrix()(0, 3).real()));
  CHECK(half.matrix()(1, 2).real() == doctest::Approx(psi.matrix()(1, 2).real()));
  CHECK(CovariantChannel::partial_dephase(0.3).name() == "partial_dephase[0.3]");
  CHECK_THROWS_AS(CovariantChannel::partial_dephase(1.5), Error);
}

TEST_CASE("monotonicity audit on the supplemental pair") {
  const auto rho = states::supplemental_rho(1.0);
  const auto sigma = states::supplemental_sigma(1.0);
  const auto audit = monotonicity_audit(rho, sigma, gibbs(rho.system(), 1.0));
  CHECK(audit.free_energies_non_increasing());
  CHECK(audit.asymmetries_non_increasing());
  CHECK(audit.modes_non_increasing());
  CHECK(audit.qfi.delta() > 0.0);
  const auto forbid = audit.forbidding();
  CHECK(std::find(forbid.begin(), forbid.end(), "qfi") != forbid.end());
}

TEST_CASE("producibility witness") {
  CHECK(producibility_witness(states::ghz(4, 1.0), 1));
  CHECK_FALSE(producibility_witness(states::ghz(4, 1.0), 4));
  const std::vector<std::size_t> all{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  CHECK_FALSE(producibility_witness(states::uniform_superposition(make_qubits(4, 1.0), all), 1));
  CHECK_THROWS_AS(producibility_witness(states::supplemental_rho(1.0), 1), Error);
}
