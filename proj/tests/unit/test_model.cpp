#include <doctest.h>

#include <cmath>
#include <numeric>

#include "coherence/error.hpp"
#include "coherence/model.hpp"
#include "helpers.hpp"

using namespace coherence;

TEST_CASE("qubit blocks carry binomial degeneracies") {
  const auto sys = make_qubits(5, 1.0);
  const auto& blocks = sys->blocks();
  REQUIRE(blocks.size() == 6);
  std::size_t total = 0;
  for (std::size_t n = 0; n <= 5; ++n) {
    CHECK(blocks.blocks[n].energy == doctest::Approx(static_cast<double>(n)));
    CHECK(static_cast<double>(blocks.blocks[n].degeneracy()) ==
          doctest::Approx(std::exp(testing::log_choose(5, n))));
    CHECK(blocks.blocks[n].degeneracy() == blocks.blocks[5 - n].degeneracy());
    total += blocks.blocks[n].degeneracy();
  }
  CHECK(total == 32);
}

TEST_CASE("product basis has subsystem 0 slowest") {
  const auto sys = make_system({{0.0, 1.0}, {0.0, 2.0, 5.0}});
  const std::vector<std::size_t> local{1, 0};
  CHECK(sys->index_of(local) == 3);
  CHECK(sys->local_indices(5) == std::vector<std::size_t>{1, 2});
  CHECK(sys->total_energies()[5] == doctest::Approx(6.0));
  for (std::size_t i = 0; i < sys->dim(); ++i) {
    const auto l = sys->local_indices(i);
    CHECK(sys->index_of(l) == i);
  }
}

TEST_CASE("system summary quantities") {
  const auto sys = make_system({{0.0, 1.0}, {0.0, 2.0, 5.0}});
  CHECK(sys->mean_energy() == doctest::Approx(0.5 + 7.0 / 3.0));
  CHECK(sys->spread_squared() == doctest::Approx(1.0 + 25.0));
  CHECK(sys->operator_norm() == doctest::Approx(6.0));
  CHECK(sys->log_dim() == doctest::Approx(std::log(6.0)));
  CHECK_FALSE(sys->identical_subsystems());
  CHECK_FALSE(sys->uniform_qubit_gap());
  CHECK(*make_qubits(3, 0.7)->uniform_qubit_gap() == doctest::Approx(0.7));
}

TEST_CASE("Gibbs partition function matches geometric sums") {
  for (double beta : {0.3, 1.0, 2.5}) {
    const double x = std::exp(-beta);
    const auto qubits = make_qubits(4, 1.0);
    CHECK(gibbs(*qubits, beta).z() == doctest::Approx(std::pow(1.0 + x, 4)).epsilon(1e-12));

    const auto ladder = make_system({{0.0, 1.0, 2.0, 3.0}});
    CHECK(gibbs(*ladder, beta).z() == doctest::Approx((1.0 - std::pow(x, 4)) / (1.0 - x)).epsilon(1e-12));
  }
}

TEST_CASE("property: Gibbs weights are block-constant and decrease with energy") {
  const auto sys = make_system({{0.0, 1.0}, {0.0, 1.0}, {0.0, 0.5, 1.0}});
  const auto g = gibbs(*sys, 1.3);
  const auto& blocks = sys->blocks();
  double previous = INFINITY;
  for (const auto& b : blocks.blocks) {
    const double w = g.weights[b.members.front()];
    for (auto i : b.members) CHECK(g.weights[i] == w);
    CHECK(w < previous);
    previous = w;
  }
  CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("near-degenerate spectra raise AmbiguousBlocking") {
  CHECK_THROWS_AS(make_system({{0.0, 1.0}, {0.0, 1.0 + 5e-9}}), Error);
  try {
    make_system({{0.0, 1.0}, {0.0, 1.0 + 5e-9}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbiguousBlocking);
  }
  // Well inside the tolerance the levels merge into one block.
  const auto merged = make_system({{0.0, 1.0}, {0.0, 1.0 + 1e-13}});
  CHECK(merged->blocks().size() == 3);
  // Well outside they stay apart.
  CHECK(make_system({{0.0, 1.0}, {0.0, 1.001}})->blocks().size() == 4);
}

TEST_CASE("window index convention") {
  CHECK(window_index(0.0, 0.0, 1.0) == 0);
  CHECK(window_index(0.49, 0.0, 1.0) == 0);
  CHECK(window_index(-0.49, 0.0, 1.0) == 0);
  CHECK(window_index(0.5, 0.0, 1.0) == 1);
  CHECK(window_index(-0.5, 0.0, 1.0) == -1);
  CHECK(window_index(1.5, 0.0, 1.0) == 2);
  CHECK(window_index(-1.5, 0.0, 1.0) == -2);
  CHECK(window_index(3.2, 1.0, 2.0) == 1);
}

TEST_CASE("property: window populations and degeneracies are complete") {
  const auto sys = make_qubits(4, 1.0);
  const auto& blocks = sys->blocks();
  std::vector<double> p{0.1, 0.2, 0.3, 0.25, 0.15};
  for (double eps : {0.05, 0.3, 0.7, 1.0, 2.5, 10.0}) {
    const auto w = energy_windows(blocks, eps, sys->mean_energy(), p);
    double pop = 0.0;
    std::size_t deg = 0;
    for (const auto& win : w.windows) {
      pop += win.population;
      deg += win.degeneracy;
      CHECK(win.center == doctest::Approx(w.mu + static_cast<double>(win.m) * eps));
    }
    CHECK(pop == doctest::Approx(1.0));
    CHECK(deg == sys->dim());
    const auto merged = w.as_blocks(blocks);
    CHECK(merged.dim() == sys->dim());
    CHECK(merged.size() == w.windows.size());
  }
}

TEST_CASE("invalid systems are rejected") {
  CHECK_THROWS_AS(make_system({}), Error);
  CHECK_THROWS_AS(make_system({{}}), Error);
  CHECK_THROWS_AS(make_system({{0.0, NAN}}), Error);
  CHECK_THROWS_AS(make_qubits(21, 1.0), Error);
}
