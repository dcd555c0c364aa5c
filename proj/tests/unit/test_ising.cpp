#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "coherence/divergence.hpp"
#include "coherence/error.hpp"
#include "coherence/ising.hpp"
#include "helpers.hpp"

using namespace coherence;
using namespace coherence::ising;

TEST_CASE("dispersion endpoints") {
  CHECK(dispersion(1.0, 0.3, 0.0) == doctest::Approx(1.4));
  CHECK(dispersion(1.0, 0.3, std::numbers::pi) == doctest::Approx(2.6));
  CHECK(dispersion(1.0, 1.0, 0.0) == 0.0);
}

TEST_CASE("property: dispersion is Lipschitz with constant 2 min(h, J)") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::uniform_real_distribution<double> k(-std::numbers::pi, std::numbers::pi);
  for (int t = 0; t < 2000; ++t) {
    const double h = u(rng);
    const double j = u(rng);
    const double a = k(rng);
    const double b = k(rng);
    const double lhs = std::abs(dispersion(h, j, a) - dispersion(h, j, b));
    CHECK(lhs <= 2.0 * std::min(h, j) * std::abs(a - b) + 1e-12);
  }
}

TEST_CASE("free fermions match exact diagonalization") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (std::size_t n : {2, 4, 6, 8}) {
    for (int t = 0; t < 5; ++t) {
      const IsingChain chain{n, u(rng), u(rng)};
      const auto ff = full_spectrum(chain);
      const auto ed = ed_oracle(chain);
      REQUIRE(ff.size() == ed.size());
      for (std::size_t i = 0; i < ff.size(); ++i) CHECK(ff[i] == doctest::Approx(ed[i]).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("two-site ring doubles the bond") {
  // h = 0: H = -2 J sx sx, eigenvalues -2J (twice) and +2J (twice).
  const auto ed = ed_oracle({2, 0.0, 0.7});
  CHECK(ed[0] == doctest::Approx(-1.4));
  CHECK(ed[1] == doctest::Approx(-1.4));
  CHECK(ed[3] == doctest::Approx(1.4));
  CHECK(full_spectrum({2, 0.0, 0.7})[0] == doctest::Approx(-1.4));
}

TEST_CASE("spin Hamiltonian basics") {
  const auto h = spin_hamiltonian({4, 0.6, 1.1});
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  const auto f = field_hamiltonian({4, 0.6, 1.1});
  CHECK(f(15, 15) == doctest::Approx(-2.4));  // all up
  CHECK(f(0, 0) == doctest::Approx(2.4));
}

TEST_CASE("sector spectra") {
  const IsingChain chain{6, 0.8, 1.0};
  const auto ns = sector_spectrum(chain, Sector::NS);
  const auto r = sector_spectrum(chain, Sector::R);
  CHECK(ns.levels.size() == 32);
  CHECK(r.levels.size() == 32);
  CHECK(r.mode_energies[3] == doctest::Approx(2.0 * (0.8 - 1.0)));
  for (std::size_t i = 1; i < ns.levels.size(); ++i) CHECK(ns.levels[i - 1].energy <= ns.levels[i].energy);
  CHECK(sector_spectrum(chain, Sector::NS, 5).levels.size() == 5);
  CHECK_THROWS_AS(sector_spectrum({26, 1.0, 1.0}, Sector::NS), Error);
}

TEST_CASE("property: degeneracy histograms") {
  for (std::size_t n : {4, 8, 12}) {
    std::size_t total = 0;
    for (const auto& [m, c] : degeneracy_histogram({n, 0.3, 0.9}, 0.5)) total += c;
    CHECK(total == (std::size_t{1} << n));

    const auto free = degeneracy_histogram({n, 1.0, 0.0}, 0.5);
    CHECK(free.size() == n + 1);
    for (const auto& [m, c] : free) {
      // Energy -n + 2k sits at window 2(-n + 2k).
      const auto k = static_cast<std::size_t>((m / 2 + static_cast<long>(n)) / 2);
      CHECK(static_cast<double>(c) == doctest::Approx(std::exp(testing::log_choose(n, k))));
    }
  }
}

TEST_CASE("gap closes at the self-dual point") {
  auto gap = [](std::size_t n) {
    const auto levels = full_spectrum({n, 1.0, 1.0});
    return levels[1] - levels[0];
  };
  CHECK(gap(16) < gap(8));
}

TEST_CASE("trade-off on quasiparticle registers") {
  const IsingChain chain{4, 0.7, 1.2};
  const auto sys = effective_register_system(chain);
  const auto g = gibbs(*sys, 1.0);
  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    const auto b = ising_tradeoff(states::random_pure(sys, rng), g, chain);
    CHECK(b.holds());
    CHECK(b.rhs == doctest::Approx(4.0 * std::numbers::ln2));
  }
  const auto wrong = make_qubits(4, 1.0);
  CHECK_THROWS_AS(ising_tradeoff(states::random_pure(wrong, rng), gibbs(*wrong, 1.0), chain), Error);
}

TEST_CASE("QFI sandwich around the field Hamiltonian") {
  std::mt19937_64 rng(54);
  const auto sys = make_qubits(4, 1.0);
  for (int t = 0; t < 20; ++t) {
    const auto rho = states::random_mixed(sys, rng, 1 + t % 4);
    CHECK(ising_qfi_bounds(rho.matrix(), {4, 0.5, 0.8}).holds());
  }
  CHECK_THROWS_AS(ising_qfi_bounds(ComplexMatrix::Identity(4, 4) / 4.0, {4, 0.5, 0.8}), Error);
}

TEST_CASE("chain validation") {
  CHECK_THROWS_AS(IsingChain({3, 1.0, 1.0}).validate(), Error);
  CHECK_THROWS_AS(IsingChain({4, -1.0, 1.0}).validate(), Error);
  CHECK_THROWS_AS(spin_hamiltonian({14, 1.0, 1.0}), Error);
}
