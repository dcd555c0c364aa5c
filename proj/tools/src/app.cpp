#include "coherence_cli/app.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "coherence/clock.hpp"
#include "coherence/divergence.hpp"
#include "coherence/error.hpp"
#include "coherence/ising.hpp"
#include "coherence/parallel.hpp"
#include "coherence/thermomajorization.hpp"
#include "coherence/tradeoff.hpp"
#include "coherence_cli/io.hpp"
#include "coherence_cli/verify.hpp"

namespace coherence::cli {

namespace {

Error input_error(const std::string& what) { return Error(ErrorCode::BadParams, what); }

struct Document {
  Json json;
  SystemPtr system;
  double beta = 1.0;
};

Document load(const JobSpec& job, bool required) {
  Document doc;
  if (!job.input.empty()) {
    doc.json = read_json_file(job.input);
  } else if (required) {
    throw input_error("--input is required for " + job.command);
  } else {
    doc.json = Json::object();
  }
  if (!doc.json.is_object()) throw input_error("input must be a JSON object");
  if (job.beta) {
    doc.beta = *job.beta;
  } else if (doc.json.contains("beta")) {
    if (!doc.json.at("beta").is_number()) throw input_error("\"beta\" must be a number");
    doc.beta = doc.json.at("beta").get<double>();
  }
  if (!(doc.beta > 0.0) || !std::isfinite(doc.beta)) throw input_error("beta must be positive and finite");
  if (doc.json.contains("system")) doc.system = parse_system(doc.json.at("system"));
  return doc;
}

QuantumState load_state(const Document& doc, const char* key) {
  if (!doc.json.contains(key)) throw input_error(std::string("input needs a \"") + key + "\" entry");
  return parse_state(doc.json.at(key), doc.system, doc.beta);
}

double epsilon_of(const JobSpec& job) {
  if (!(*job.epsilon > 0.0) || !std::isfinite(*job.epsilon)) throw input_error("epsilon must be positive");
  return *job.epsilon;
}

Json bound_json(const BoundEntry& b) {
  return {{"lhs", number(b.lhs)},
          {"rhs", number(b.rhs)},
          {"slack", number(b.slack())},
          {"holds", b.holds()},
          {"saturated", b.saturated()}};
}

Json bounds_json(const std::vector<BoundEntry>& bounds) {
  Json j = Json::object();
  for (const auto& b : bounds) j[b.name] = bound_json(b);
  return j;
}

Json numbers(const std::vector<double>& xs) {
  Json j = Json::array();
  for (double x : xs) j.push_back(number(x));
  return j;
}

Json epsilon_json(const EpsilonTradeoff& t) {
  return {{"epsilon", number(t.epsilon)},
          {"w_coh_eps", number(t.w_coh_eps)},
          {"qfi_eps", number(t.qfi_eps)},
          {"r", number(t.r)},
          {"r_tilde", number(t.r_tilde)},
          {"bounds", bounds_json({t.with_r, t.with_r_tilde, t.qfi_perturbation, t.window_work})}};
}

// Writes to the job's output file when one is given.
void emit(const JobSpec& job, std::ostream& out, const std::string& text) {
  if (job.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(job.output, std::ios::binary);
  if (!file) throw input_error("cannot write " + job.output);
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int compute(const JobSpec& job, std::ostream& out) {
  const auto doc = load(job, true);
  const auto rho = load_state(doc, "state");
  const auto g = gibbs(rho.system(), doc.beta);

  const auto wc = w_coh(rho, g);
  const auto wi = w_incoh(rho, g);
  const auto wt = w_tot(rho, g);
  const auto clock = clock_report(rho);
  const auto report = tradeoff_report(rho, g);

  Json j;
  j["beta"] = number(doc.beta);
  j["dim"] = rho.dim();
  j["w_coh"] = number(wc.value);
  j["w_coh_alpha"] = number(wc.scan.infimum_alpha);
  j["w_coh_refinement_error"] = number(wc.scan.refinement_error);
  j["w_incoh"] = number(wi.value);
  j["w_incoh_closed_form"] = number(w_incoh_closed_form(rho, g));
  j["w_tot"] = number(wt.value);
  j["qfi"] = number(clock.qfi);
  j["skew_half"] = number(clock.skew.at(0.5));
  j["variance"] = number(clock.variance);
  j["mean_energy"] = number((rho.matrix() * rho.system().hamiltonian()).trace().real());
  j["block_probabilities"] = numbers(classical_data(rho).block_probabilities);
  j["bounds"] = bounds_json(report.bounds);
  if (job.epsilon) j["epsilon"] = epsilon_json(epsilon_tradeoff(rho, g, epsilon_of(job)));
  j["export"] = export_state(rho, doc.beta);
  emit(job, out, dump(j));
  return kOk;
}

std::string sweep_csv(const JobSpec& job, const Document& doc) {
  SystemPtr sys = doc.system;
  if (!sys) sys = make_qubits(job.n.value_or(2), 1.0);
  const auto g = gibbs(*sys, doc.beta);
  std::vector<std::string> rows(job.samples);
  parallel_for(job.samples, [&](std::size_t i) {
    std::mt19937_64 rng(job.seed + i);
    const auto rho = states::random_pure(sys, rng);
    const auto report = tradeoff_report(rho, g);
    std::ostringstream line;
    for (const auto& b : report.bounds) {
      line << i << ',' << format12(report.w_coh) << ',' << format12(report.qfi) << ',' << b.name << ','
           << format12(b.lhs) << ',' << format12(b.rhs) << ',' << format12(b.slack()) << '\n';
    }
    rows[i] = line.str();
  });
  std::string csv = "state_id,w_coh,qfi,bound_name,lhs,rhs,slack\n";
  for (const auto& r : rows) csv += r;
  return csv;
}

int tradeoff(const JobSpec& job, std::ostream& out) {
  if (job.samples > 0) {
    const auto doc = load(job, false);
    emit(job, out, sweep_csv(job, doc));
    return kOk;
  }
  const auto doc = load(job, true);
  const auto rho = load_state(doc, "state");
  const auto& sys = rho.system();
  const auto g = gibbs(sys, doc.beta);
  const auto report = tradeoff_report(rho, g);

  Json j;
  j["beta"] = number(doc.beta);
  j["w_coh"] = number(report.w_coh);
  j["qfi"] = number(report.qfi);
  j["delta_e_squared"] = number(report.delta_e_squared);
  j["bounds"] = bounds_json(report.bounds);
  j["all_hold"] = report.all_hold();
  if (sys.uniform_qubit_gap()) {
    const auto chain = two_level_chain(sys, resources(rho, g));
    j["proof_chain"] = {{"w_coh", number(chain.w_coh)},
                        {"prop1", number(chain.prop1)},
                        {"binary_entropy_sum", number(chain.binary_entropy_sum)},
                        {"theorem1", number(chain.theorem1)},
                        {"ordered", chain.ordered()}};
  }
  const auto hoeff = hoeffding_frequency_bound(sys);
  Json rows = Json::array();
  for (const auto& r : hoeff.rows) {
    rows.push_back({{"energy", number(r.energy)}, {"frequency", number(r.frequency)}, {"bound", number(r.bound)}});
  }
  j["hoeffding"] = {{"holds", hoeff.holds()}, {"rows", rows}};
  if (job.epsilon) j["epsilon"] = epsilon_json(epsilon_tradeoff(rho, g, epsilon_of(job)));
  emit(job, out, dump(j));
  return kOk;
}

Json changes_json(const std::vector<MonotoneChange>& changes) {
  Json j = Json::array();
  for (const auto& c : changes) {
    j.push_back({{"name", c.name}, {"before", number(c.before)}, {"after", number(c.after)}});
  }
  return j;
}

int monotones(const JobSpec& job, std::ostream& out) {
  const auto doc = load(job, true);
  const auto rho = load_state(doc, "state");
  const auto sigma = load_state(doc, "target");
  if (rho.dim() != sigma.dim()) throw Error(ErrorCode::DimensionMismatch, "state and target differ in dimension");
  const auto g = gibbs(rho.system(), doc.beta);
  const auto audit = monotonicity_audit(rho, sigma, g);

  Json j;
  j["beta"] = number(doc.beta);
  j["qfi"] = {{"before", number(audit.qfi.before)}, {"after", number(audit.qfi.after)}};
  j["skew"] = changes_json(audit.skew);
  j["free_energies"] = changes_json(audit.free_energies);
  j["asymmetries"] = changes_json(audit.asymmetries);
  j["modes"] = changes_json(audit.modes);
  j["free_energies_non_increasing"] = audit.free_energies_non_increasing();
  j["asymmetries_non_increasing"] = audit.asymmetries_non_increasing();
  j["modes_non_increasing"] = audit.modes_non_increasing();
  j["forbidding"] = audit.forbidding();
  emit(job, out, dump(j));
  return kOk;
}

int thermomajorize(const JobSpec& job, std::ostream& out) {
  const auto doc = load(job, true);
  const auto rho = load_state(doc, "state");
  const auto g = gibbs(rho.system(), doc.beta);
  const auto block = dephase_blocks(rho);
  const auto incoherent = dephase_full(rho);

  std::string stem = job.output.empty() ? "thermomajorization" : job.output;
  if (stem.size() > 4 && stem.ends_with(".csv")) stem.resize(stem.size() - 4);
  const std::string block_path = stem + "_block.csv";
  const std::string incoherent_path = stem + "_incoherent.csv";
  for (const auto& [path, state] : {std::pair{block_path, &block}, std::pair{incoherent_path, &incoherent}}) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw input_error("cannot write " + path);
    write_curve_csv(file, thermomajorization_curve(*state, g));
  }

  Json j;
  j["beta"] = number(doc.beta);
  j["block_curve"] = block_path;
  j["incoherent_curve"] = incoherent_path;
  j["block_dominates"] = thermomajorizes(block, incoherent, g);
  j["incoherent_dominates"] = thermomajorizes(incoherent, block, g);
  out << dump(j);
  return kOk;
}

ising::IsingChain chain_from(const JobSpec& job, const Document& doc) {
  ising::IsingChain chain{2, 1.0, 1.0};
  if (doc.json.contains("ising")) {
    const auto& c = doc.json.at("ising");
    if (!c.is_object()) throw input_error("\"ising\" must be an object");
    if (c.contains("N")) {
      if (!c.at("N").is_number_integer() || c.at("N").get<long long>() < 0) throw input_error("\"N\" must be a count");
      chain.n = c.at("N").get<std::size_t>();
    }
    chain.h = c.value("h", chain.h);
    chain.j = c.value("J", chain.j);
  }
  if (job.n) chain.n = *job.n;
  chain.validate();
  return chain;
}

int ising_spectrum(const JobSpec& job, std::ostream& out) {
  const auto doc = load(job, false);
  const auto chain = chain_from(job, doc);
  std::string csv = "sector,energy,pattern\n";
  for (auto sector : {ising::Sector::NS, ising::Sector::R}) {
    for (const auto& level : ising::sector_spectrum(chain, sector).levels) {
      std::string pattern;
      for (std::size_t b = 0; b < chain.n; ++b) pattern += (level.occupation >> b) & 1u ? '1' : '0';
      csv += (sector == ising::Sector::NS ? "NS," : "R,") + format12(level.energy) + ',' + pattern + '\n';
    }
  }
  emit(job, out, csv);
  return kOk;
}

int ising_histogram(const JobSpec& job, std::ostream& out) {
  const auto doc = load(job, false);
  const auto base = chain_from(job, doc);
  const double eps = job.epsilon ? epsilon_of(job) : 0.5;

  std::vector<std::pair<double, double>> sweep;
  if (doc.json.contains("ising") && doc.json.at("ising").contains("sweep")) {
    for (const auto& p : doc.json.at("ising").at("sweep")) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw input_error("sweep entries must be [h, J] pairs");
      }
      sweep.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
  } else {
    for (int t = 0; t <= 10; ++t) sweep.emplace_back(1.0 - 0.1 * t, 0.1 * t);
  }

  std::string csv = "h,J,epsilon,window_center,count\n";
  for (const auto& [h, j] : sweep) {
    const ising::IsingChain chain{base.n, h, j};
    for (const auto& [m, count] : ising::degeneracy_histogram(chain, eps)) {
      csv += format12(h) + ',' + format12(j) + ',' + format12(eps) + ',' + format12(static_cast<double>(m) * eps) +
             ',' + std::to_string(count) + '\n';
    }
  }
  emit(job, out, csv);
  return kOk;
}

int verify(const JobSpec& job, std::ostream& out) {
  const double beta = job.beta.value_or(1.0);
  if (!(beta > 0.0) || !std::isfinite(beta)) throw input_error("beta must be positive and finite");
  std::vector<std::string> suites{job.suite};
  if (job.suite == "all") suites = suite_names();
  Json j = Json::array();
  bool ok = true;
  for (const auto& s : suites) {
    const auto result = run_suite(s, job.samples, job.n, job.seed, beta);
    ok = ok && result.passed();
    j.push_back(result.to_json());
  }
  emit(job, out, dump(suites.size() == 1 ? j[0] : j));
  return ok ? kOk : kBoundViolation;
}

}  // namespace

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    if (job.command == "compute") return compute(job, out);
    if (job.command == "tradeoff") return tradeoff(job, out);
    if (job.command == "monotones") return monotones(job, out);
    if (job.command == "thermomajorize") return thermomajorize(job, out);
    if (job.command == "ising-spectrum") return ising_spectrum(job, out);
    if (job.command == "ising-histogram") return ising_histogram(job, out);
    if (job.command == "verify") return verify(job, out);
    err << "error: unknown command \"" << job.command << "\"\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kNumericalError : kInputError;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace coherence::cli
