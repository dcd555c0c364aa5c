#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "coherence/clock.hpp"
#include "coherence/divergence.hpp"
#include "coherence_cli/app.hpp"
#include "coherence_cli/io.hpp"
#include "coherence_cli/verify.hpp"

using namespace coherence;
using namespace coherence::cli;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "coherence_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_doc(const std::string& name, const Json& doc) {
  const auto path = scratch(name);
  std::ofstream(path) << doc.dump();
  return path;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_job(const JobSpec& job) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(job, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("number formatting keeps twelve significant digits") {
  CHECK(format12(0.1234567890123456) == "0.123456789012");
  CHECK(number(1.0 / 3.0).get<double>() == 0.333333333333);
  CHECK(number(INFINITY) == "inf");
  CHECK(number(-INFINITY) == "-inf");
  CHECK(number(NAN) == "nan");
}

TEST_CASE("compute on the supplemental state") {
  JobSpec job;
  job.command = "compute";
  job.input = write_doc("sup.json", {{"beta", 1.0}, {"state", {{"kind", "supplemental_rho"}}}}).string();
  const auto r = run_job(job);
  REQUIRE(r.code == kOk);
  const auto j = Json::parse(r.out);
  CHECK(std::abs(j.at("qfi").get<double>() - 0.843) <= 1e-3);
  for (const char* key : {"w_coh", "w_incoh", "w_tot", "qfi", "skew_half", "bounds"}) CHECK(j.contains(key));
}

TEST_CASE("property: exported states round-trip") {
  std::mt19937_64 rng(61);
  const auto sys = make_system({{0.0, 1.0}, {0.0, 0.6, 1.3}});
  for (int t = 0; t < 10; ++t) {
    const auto rho = states::random_mixed(sys, rng, 1 + t % 6);
    const auto doc = export_state(rho, 0.8);
    const auto back = parse_state(doc.at("state"), parse_system(doc.at("system")), doc.at("beta").get<double>());
    const auto g = gibbs(*sys, 0.8);
    const auto g2 = gibbs(back.system(), 0.8);
    CHECK(std::abs(w_coh(rho, g).value - w_coh(back, g2).value) <= 1e-12);
    CHECK(std::abs(qfi(rho) - qfi(back)) <= 1e-12);
  }
}

TEST_CASE("exit codes") {
  JobSpec job;
  job.command = "compute";
  job.input = scratch("does_not_exist.json").string();
  CHECK(run_job(job).code == kInputError);

  job.input = write_doc("broken.json", "not an object").string();
  CHECK(run_job(job).code == kInputError);
  {
    std::ofstream(scratch("garbage.json")) << "{ nope";
    job.input = scratch("garbage.json").string();
    CHECK(run_job(job).code == kInputError);
  }

  const Json nh = {{"system", {{"local_spectra", {{0.0, 1.0}}}}},
                   {"state", {{"kind", "dense"}, {"matrix", {{1.0, 0.5}, {0.4, 0.0}}}}}};
  job.input = write_doc("nonhermitian.json", nh).string();
  const auto r = run_job(job);
  CHECK(r.code == kNumericalError);
  CHECK(r.err.find("NonHermitian") != std::string::npos);

  const Json ambiguous = {{"system", {{"local_spectra", {{0.0, 1.0}, {0.0, 1.000000005}}}}},
                          {"state", {{"kind", "coherent_gibbs"}}}};
  job.input = write_doc("ambiguous.json", ambiguous).string();
  CHECK(run_job(job).code == kNumericalError);

  job.command = "nonsense";
  CHECK(run_job(job).code == kInputError);
}

TEST_CASE("determinism across thread counts") {
  JobSpec job;
  job.command = "tradeoff";
  job.samples = 300;
  job.n = 3;
  setenv("COHERENCE_LEDGER_THREADS", "1", 1);
  const auto one = run_job(job);
  setenv("COHERENCE_LEDGER_THREADS", "6", 1);
  const auto six = run_job(job);
  unsetenv("COHERENCE_LEDGER_THREADS");
  REQUIRE(one.code == kOk);
  CHECK(one.out == six.out);
  CHECK(one.out.rfind("state_id,w_coh,qfi,bound_name,lhs,rhs,slack\n", 0) == 0);
}

TEST_CASE("thermomajorize writes both curves") {
  JobSpec job;
  job.command = "thermomajorize";
  job.input = write_doc("psi.json", {{"beta", 1.0},
                                     {"state", {{"kind", "two_qubit_psi"},
                                                {"params", {{"p0", 0.2}, {"p1", 0.6}, {"p2", 0.2}}}}}})
                  .string();
  job.output = scratch("curves.csv").string();
  const auto r = run_job(job);
  REQUIRE(r.code == kOk);
  const auto j = Json::parse(r.out);
  CHECK(j.at("block_dominates").get<bool>());
  CHECK(slurp(scratch("curves_block.csv")).rfind("x,y\n", 0) == 0);
  CHECK(slurp(scratch("curves_incoherent.csv")).rfind("x,y\n", 0) == 0);
}

TEST_CASE("Ising commands") {
  JobSpec job;
  job.command = "ising-spectrum";
  job.n = 4;
  auto r = run_job(job);
  REQUIRE(r.code == kOk);
  CHECK(r.out.rfind("sector,energy,pattern\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 17);

  job.command = "ising-histogram";
  job.n = 6;
  job.input = write_doc("sweep.json", {{"ising", {{"sweep", {{1.0, 0.0}}}}}}).string();
  r = run_job(job);
  REQUIRE(r.code == kOk);
  CHECK(r.out == "h,J,epsilon,window_center,count\n1,0,0.5,-6,1\n1,0,0.5,-4,6\n1,0,0.5,-2,15\n"
                 "1,0,0.5,0,20\n1,0,0.5,2,15\n1,0,0.5,4,6\n1,0,0.5,6,1\n");

  job.n = 5;
  CHECK(run_job(job).code == kInputError);
}

TEST_CASE("monotones needs a target") {
  JobSpec job;
  job.command = "monotones";
  job.input = write_doc("pair.json", {{"state", {{"kind", "supplemental_rho"}}},
                                      {"target", {{"kind", "supplemental_sigma"}}}})
                  .string();
  const auto r = run_job(job);
  REQUIRE(r.code == kOk);
  const auto j = Json::parse(r.out);
  CHECK(j.at("free_energies_non_increasing").get<bool>());
  job.input = write_doc("single.json", {{"state", {{"kind", "supplemental_rho"}}}}).string();
  CHECK(run_job(job).code == kInputError);
}

TEST_CASE("verify suites") {
  JobSpec job;
  job.command = "verify";
  job.suite = "binomial";
  auto r = run_job(job);
  CHECK(r.code == kOk);
  CHECK(Json::parse(r.out).at("passed").get<bool>());
  job.suite = "unknown";
  CHECK(run_job(job).code == kInputError);
  CHECK(suite_names().size() == 6);
}

TEST_CASE("command-line binary") {
  const char* bin = std::getenv("COHERENCE_LEDGER_BIN");
  if (bin == nullptr) return;
  const std::string exe = std::string("\"") + bin + "\"";
  CHECK(std::system((exe + " verify --suite binomial > /dev/null").c_str()) == 0);
  const int bad = std::system((exe + " compute --input /nonexistent.json 2> /dev/null").c_str());
  CHECK(WEXITSTATUS(bad) == 1);
  const int flag = std::system((exe + " compute --bogus 2> /dev/null").c_str());
  CHECK(WEXITSTATUS(flag) == 1);
}
