#include "coherence_cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "coherence/clock.hpp"
#include "coherence/divergence.hpp"
#include "coherence/error.hpp"
#include "coherence/ising.hpp"
#include "coherence/parallel.hpp"
#include "coherence/tradeoff.hpp"

namespace coherence::cli {

namespace {

struct Observation {
  std::size_t check;
  double slack;
  bool ok;
};

using Sample = std::function<std::vector<Observation>(std::size_t, std::mt19937_64&)>;

SuiteResult sweep(const std::string& suite, const std::vector<std::string>& names, std::size_t count,
                  std::uint64_t seed, const Sample& sample) {
  std::vector<std::vector<Observation>> slots(count);
  parallel_for(count, [&](std::size_t i) {
    std::mt19937_64 rng(seed + i);
    slots[i] = sample(i, rng);
  });
  SuiteResult result;
  result.suite = suite;
  for (const auto& name : names) result.checks.push_back({name});
  for (const auto& slot : slots) {
    for (const auto& obs : slot) result.checks[obs.check].record(obs.slack, obs.ok);
  }
  return result;
}

Observation bound(std::size_t check, const BoundEntry& b) { return {check, b.slack(), b.holds()}; }

// |deviation| <= tol reported as slack tol - |deviation|.
Observation close(std::size_t check, double deviation, double tol) {
  return {check, tol - std::abs(deviation), std::abs(deviation) <= tol};
}

SuiteResult tradeoff_suite(std::size_t samples, std::optional<std::size_t> n_opt, std::uint64_t seed, double beta) {
  const std::size_t n = n_opt.value_or(2);
  if (n == 0 || n > 10) throw Error(ErrorCode::BadParams, "tradeoff suite supports 1..10 qubits");
  const std::size_t count = samples > 0 ? samples : (n == 2 ? 10000 : 1000);
  auto sys = make_qubits(n, 1.0);
  const auto g = gibbs(*sys, beta);
  std::vector<std::string> names{"prop1", "theorem1", "tight_binomial", "theorem2", "per_particle", "proof_chain"};
  if (n == 2) names.push_back("eq4");
  return sweep("tradeoff", names, count, seed, [&](std::size_t, std::mt19937_64& rng) {
    const auto rho = states::random_pure(sys, rng);
    const auto r = resources(rho, g);
    std::vector<Observation> obs{
        bound(0, prop1_bound(*sys, r)),        bound(1, theorem1_bound(*sys, r)),
        bound(2, tight_binomial_bound(*sys, r)), bound(3, theorem2_bound(*sys, r)),
        bound(4, per_particle_bound(*sys, r)),
    };
    const auto chain = two_level_chain(*sys, r);
    const double chain_slack = std::min({chain.prop1 - chain.w_coh, chain.binary_entropy_sum - chain.prop1,
                                         chain.theorem1 - chain.binary_entropy_sum});
    obs.push_back({5, chain_slack, chain.ordered()});
    if (n == 2) obs.push_back(bound(6, eq4_bound(*sys, r)));
    return obs;
  });
}

SuiteResult qutrit_suite(std::size_t samples, std::optional<std::size_t> n_opt, std::uint64_t seed, double beta) {
  const std::size_t n = n_opt.value_or(2);
  if (n == 0 || n > 6) throw Error(ErrorCode::BadParams, "qutrit suite supports 1..6 qutrits");
  const std::size_t count = samples > 0 ? samples : 1000;
  auto sys = make_system(std::vector<std::vector<double>>(n, {0.0, 1.0, 2.0}));
  const auto g = gibbs(*sys, beta);
  return sweep("tradeoff-qutrits", {"prop1", "theorem2", "per_particle"}, count, seed,
               [&](std::size_t, std::mt19937_64& rng) {
                 const auto rho = states::random_pure(sys, rng);
                 const auto r = resources(rho, g);
                 return std::vector<Observation>{bound(0, prop1_bound(*sys, r)), bound(1, theorem2_bound(*sys, r)),
                                                 bound(2, per_particle_bound(*sys, r))};
               });
}

SuiteResult monotonicity_suite(std::size_t samples, std::uint64_t seed, double beta) {
  const std::size_t count = samples > 0 ? samples : 1000;
  const std::vector<SystemPtr> systems{make_qubits(2, 1.0), make_system({{0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}}),
                                       make_qubits(4, 1.0)};
  std::vector<GibbsData> gammas;
  for (const auto& s : systems) gammas.push_back(gibbs(*s, beta));
  const std::vector<double> alphas{0.25, 0.5, 0.75};

  return sweep(
      "monotonicity", {"qfi", "skew", "pure_identity", "additivity"}, count, seed,
      [&](std::size_t i, std::mt19937_64& rng) {
        const std::size_t which = i % systems.size();
        const auto& sys = systems[which];
        std::vector<CovariantChannel> channels{CovariantChannel::block_dephase()};
        for (int k = 1; k <= 9; ++k) {
          channels.push_back(CovariantChannel::partial_dephase(0.1 * k));
          channels.push_back(CovariantChannel::gibbs_mix(0.1 * k, gammas[which]));
        }
        const std::size_t rank = 1 + static_cast<std::size_t>(rng() % sys->dim());
        const auto rho = states::random_mixed(sys, rng, rank);
        const double q0 = qfi(rho);
        std::vector<double> s0;
        for (double a : alphas) s0.push_back(skew_information(rho, a));

        std::vector<Observation> obs;
        for (const auto& ch : channels) {
          const auto out = ch.apply(rho);
          const double dq = qfi(out) - q0;
          obs.push_back({0, -dq, dq <= 1e-9});
          for (std::size_t a = 0; a < alphas.size(); ++a) {
            const double ds = skew_information(out, alphas[a]) - s0[a];
            obs.push_back({1, -ds, ds <= 1e-9});
          }
        }

        const auto psi = states::random_pure(sys, rng);
        const double qp = qfi(psi);
        const double var4 = 4.0 * variance(psi);
        obs.push_back(close(2, qp - var4, 1e-9));
        for (double a : alphas) obs.push_back(close(2, 4.0 * skew_information(psi, a) - qp, 1e-9));

        if (which == 0) {
          const auto pair = states::tensor_power(rho, 2);
          obs.push_back(close(3, qfi(pair) - 2.0 * q0, 1e-9));
          obs.push_back(close(3, skew_information(pair, 0.5) - 2.0 * s0[1], 1e-9));
        }
        return obs;
      });
}

SuiteResult binomial_suite(std::optional<std::size_t> n_opt) {
  const std::size_t top = n_opt.value_or(100);
  SuiteResult result;
  result.suite = "binomial";
  result.checks = {{"binomial_inequality"}, {"central_below_n_log2"}};
  for (std::size_t n = 1; n <= top; ++n) {
    const auto check = verify_binomial_inequality(n);
    result.checks[0].record(check.worst_slack, check.holds);
    const double gap = static_cast<double>(n) * std::numbers::ln2 - log_central_binomial(n);
    result.checks[1].record(gap, gap >= -1e-12);
  }
  return result;
}

SuiteResult ising_suite(std::size_t samples, std::optional<std::size_t> n_opt, std::uint64_t seed) {
  const std::size_t per_n = samples > 0 ? samples : 20;
  std::vector<std::size_t> sizes{2, 4, 6, 8, 10};
  if (n_opt) sizes = {*n_opt};
  const std::size_t count = per_n * sizes.size();

  auto result = sweep("ising", {"ed_match"}, count, seed, [&](std::size_t i, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0);
    ising::IsingChain chain;
    chain.n = sizes[i / per_n];
    chain.h = u(rng);
    chain.j = u(rng);
    const auto ff = ising::full_spectrum(chain);
    const auto ed = ising::ed_oracle(chain);
    double worst = 0.0;
    for (std::size_t k = 0; k < ff.size(); ++k) worst = std::max(worst, std::abs(ff[k] - ed[k]));
    return std::vector<Observation>{close(0, worst, 1e-8)};
  });

  CheckTally binomial{"histogram_binomial"};
  const auto free = ising::degeneracy_histogram({16, 1.0, 0.0}, 0.5);
  bool exact = free.size() == 17;
  for (std::size_t n = 0; n <= 16 && exact; ++n) {
    const long m = static_cast<long>(2 * (2 * static_cast<long>(n) - 16));  // centre -16 + 2n at eps = 0.5
    const auto it = free.find(m);
    exact = it != free.end() && static_cast<double>(it->second) == std::round(std::exp(log_binomial(16, n)));
  }
  binomial.record(exact ? 0.0 : -1.0, exact);
  result.checks.push_back(binomial);

  CheckTally total{"histogram_total"};
  std::size_t sum = 0;
  for (const auto& [m, c] : ising::degeneracy_histogram({16, 0.0, 1.0}, 0.5)) sum += c;
  total.record(sum == 65536 ? 0.0 : -1.0, sum == 65536);
  result.checks.push_back(total);

  CheckTally closing{"gap_closing"};
  auto gap = [](std::size_t n) {
    const auto levels = ising::full_spectrum({n, 1.0, 1.0});
    return levels[1] - levels[0];
  };
  const double g8 = gap(8);
  const double g16 = gap(16);
  closing.record(g8 - g16, g16 < g8);
  result.checks.push_back(closing);
  return result;
}

SuiteResult epsilon_suite(std::size_t samples, std::optional<std::size_t> n_opt, std::uint64_t seed, double beta) {
  const std::size_t n = n_opt.value_or(3);
  if (n == 0 || n > 6) throw Error(ErrorCode::BadParams, "epsilon suite supports 1..6 qubits");
  const std::size_t count = samples > 0 ? samples : 1000;
  auto sys = make_qubits(n, 1.0);
  const auto g = gibbs(*sys, beta);
  const ComplexMatrix h = sys->hamiltonian();
  const double norm = sys->operator_norm();
  const std::vector<double> eps{0.1, 0.3, 1.0};
  return sweep("epsilon",
               {"with_r", "with_r_tilde", "qfi_perturbation", "window_work", "small_epsilon", "random_perturbation"},
               count, seed, [&](std::size_t i, std::mt19937_64& rng) {
                 const auto rho = i % 2 == 0 ? states::random_pure(sys, rng) : states::random_mixed(sys, rng);
                 std::vector<Observation> obs;
                 for (double e : eps) {
                   const auto t = epsilon_tradeoff(rho, g, e);
                   obs.push_back(bound(0, t.with_r));
                   obs.push_back(bound(1, t.with_r_tilde));
                   obs.push_back(bound(2, t.qfi_perturbation));
                   obs.push_back(bound(3, t.window_work));
                 }
                 const auto fine = epsilon_tradeoff(rho, g, 1e-3);
                 obs.push_back(close(4, fine.w_coh_eps - w_coh(rho, g).value, 1e-9));

                 std::normal_distribution<double> normal;
                 const auto d = h.rows();
                 ComplexMatrix hi(d, d);
                 for (Eigen::Index a = 0; a < d; ++a) {
                   for (Eigen::Index b = 0; b < d; ++b) {
                     const double re = normal(rng);
                     const double im = normal(rng);
                     hi(a, b) = Complex(re, im);
                   }
                 }
                 hi = (0.5 * (hi + hi.adjoint())).eval();
                 hi /= eigh(hi).eigenvalues.cwiseAbs().maxCoeff();
                 const double q = qfi(rho.matrix(), h);
                 for (double e : eps) {
                   const double dq = std::abs(qfi(rho.matrix(), h + 0.5 * e * hi) - q);
                   const double rhs = 4.0 * e * norm + e * e;
                   obs.push_back({5, rhs - dq, dq <= rhs + 1e-9});
                 }
                 return obs;
               });
}

}  // namespace

void CheckTally::record(double slack, bool ok) {
  worst_slack = count == 0 ? slack : std::min(worst_slack, slack);
  ++count;
  if (!ok) ++failures;
}

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckTally& c) { return c.passed(); });
}

Json SuiteResult::to_json() const {
  Json j;
  j["suite"] = suite;
  j["passed"] = passed();
  j["checks"] = Json::array();
  for (const auto& c : checks) {
    j["checks"].push_back(
        {{"name", c.name}, {"count", c.count}, {"failures", c.failures}, {"worst_slack", number(c.worst_slack)}});
  }
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"tradeoff", "tradeoff-qutrits", "monotonicity",
                                              "binomial", "ising",            "epsilon"};
  return names;
}

SuiteResult run_suite(const std::string& suite, std::size_t samples, std::optional<std::size_t> n,
                      std::uint64_t seed, double beta) {
  if (suite == "tradeoff") return tradeoff_suite(samples, n, seed, beta);
  if (suite == "tradeoff-qutrits") return qutrit_suite(samples, n, seed, beta);
  if (suite == "monotonicity") return monotonicity_suite(samples, seed, beta);
  if (suite == "binomial") return binomial_suite(n);
  if (suite == "ising") return ising_suite(samples, n, seed);
  if (suite == "epsilon") return epsilon_suite(samples, n, seed, beta);
  throw Error(ErrorCode::BadParams, "unknown suite \"" + suite + "\"");
}

}  // namespace coherence::cli
